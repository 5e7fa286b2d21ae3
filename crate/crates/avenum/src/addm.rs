//! Incidence-set variant of the cutting algorithm.
//!
//! Every vertex carries the set `I(v)` of rows it is considered incident to.
//! After each row the edge set is rebuilt from scratch: two vertices are
//! adjacent when their incidence sets share at least `d-1` rows.

use crate::error::AlgError;
use crate::hrep::{simplex_corners, HPolytope};
use crate::partition::{Class, Driver, IndexSet, Origin, PartitionScript, VertexId, VertexLog};
use crate::numerics::Scalar;

/// Options for [`addm_run`].
#[derive(Debug, Clone, Default)]
pub struct AddmOptions {
    /// Allow `d ≥ 4`, where the approximation guarantee is open.
    pub experimental: bool,
    /// Abort once more than this many vertices are alive after a row.
    pub max_vertices: Option<usize>,
}

/// State of an incidence-set run between iterations.
#[derive(Debug, Clone)]
pub struct AddmState<S> {
    d: usize,
    m: usize,
    log: VertexLog<S>,
    incidence: Vec<IndexSet>,
    alive: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
}

/// Final graph of an incidence-set run.
#[derive(Debug, Clone)]
pub struct AddmResult<S> {
    pub d: usize,
    pub log: VertexLog<S>,
    /// `I(v)` for every vertex ever created, 0-based rows.
    pub incidence: Vec<IndexSet>,
    /// Surviving vertices in creation order.
    pub vertices: Vec<VertexId>,
    pub edges: Vec<(VertexId, VertexId)>,
}

impl<S: Scalar> AddmResult<S> {
    pub fn coords(&self) -> Vec<Vec<S>> {
        self.vertices.iter().filter_map(|&v| self.log.coord(v).map(<[S]>::to_vec)).collect()
    }
}

impl<S: Scalar> AddmState<S> {
    /// Start from the `d+1` corners of the initial simplex, optionally with
    /// coordinates.
    pub fn new(d: usize, m: usize, corners: Option<Vec<Vec<S>>>) -> Self {
        let mut log = VertexLog::new();
        let mut incidence = Vec::new();
        let mut coords = corners.map(|c| c.into_iter());
        for j in 0..=d {
            let c = coords.as_mut().and_then(|it| it.next());
            log.push(Origin::Initial(j), c);
            incidence.push(IndexSet::from_iter(m, (0..=d).filter(|&i| i != j)));
        }
        let alive: Vec<VertexId> = (0..=d).collect();
        let mut st = AddmState { d, m, log, incidence, alive, edges: Vec::new() };
        st.rebuild_edges();
        st
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn log(&self) -> &VertexLog<S> {
        &self.log
    }

    pub fn incidence(&self, v: VertexId) -> &IndexSet {
        &self.incidence[v]
    }

    pub fn alive(&self) -> &[VertexId] {
        &self.alive
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Process one row.
    pub fn step(&mut self, row: usize, driver: &Driver<'_, S>) -> Result<(), AlgError> {
        self.step_limited(row, driver, None)
    }

    /// [`Self::step`] that refuses, before creating anything, to leave more
    /// than `cap` vertices alive.
    pub fn step_limited(&mut self, row: usize, driver: &Driver<'_, S>, cap: Option<usize>) -> Result<(), AlgError> {
        let mut class = vec![Class::Minus; self.log.len()];
        for &v in &self.alive {
            class[v] = driver.classify(row, self.log.get(v));
        }
        if !self.alive.iter().any(|&v| class[v] == Class::Minus) {
            return Err(AlgError::EmptyMinusClass { row });
        }
        if let Some(cap) = cap {
            let split = self.edges.iter().filter(|&&(u, w)| (class[u] == Class::Plus) != (class[w] == Class::Plus) && class[u] != Class::Zero && class[w] != Class::Zero).count();
            let kept = self.alive.iter().filter(|&&v| class[v] != Class::Plus).count();
            if kept + split > cap {
                return Err(AlgError::TooLarge { row, vertices: kept + split });
            }
        }
        let mut created = Vec::new();
        for &(u, w) in &self.edges {
            let (mi, pl) = match (class[u], class[w]) {
                (Class::Minus, Class::Plus) => (u, w),
                (Class::Plus, Class::Minus) => (w, u),
                _ => continue,
            };
            let c = driver.place(row, self.log.coord(mi), self.log.coord(pl))?;
            let v = self.log.push(Origin::Split { row, minus: mi, plus: pl }, c);
            self.incidence.push(self.incidence[mi].intersect(&self.incidence[pl]));
            created.push(v);
        }
        for &v in &self.alive {
            if class[v] == Class::Zero {
                self.incidence[v].insert(row);
            }
        }
        for &v in &created {
            self.incidence[v].insert(row);
        }
        self.alive.retain(|&v| class[v] != Class::Plus);
        self.alive.extend(created);
        self.rebuild_edges();
        Ok(())
    }

    fn rebuild_edges(&mut self) {
        let need = self.d.saturating_sub(1) as u32;
        self.edges.clear();
        for (k, &u) in self.alive.iter().enumerate() {
            for &w in &self.alive[k + 1..] {
                if self.incidence[u].intersect_count(&self.incidence[w]) >= need {
                    self.edges.push((u, w));
                }
            }
        }
    }

    pub fn finish(self) -> AddmResult<S> {
        debug_assert!(self.incidence.iter().all(|s| s.len() <= self.m));
        AddmResult { d: self.d, log: self.log, incidence: self.incidence, vertices: self.alive, edges: self.edges }
    }
}

/// Abstract run over rows `d+1..m` driven by a partition script.
pub fn core_addm(d: usize, m: usize, script: &dyn PartitionScript) -> Result<AddmResult<f64>, AlgError> {
    let mut st = AddmState::<f64>::new(d, m, None);
    let driver = Driver::Script(script);
    for row in d + 1..m {
        st.step(row, &driver)?;
    }
    Ok(st.finish())
}

/// Corners of `(1+ε/2)Δ`, where `Δ` is cut out by the first `d+1` rows.
pub fn simplex_vertices<S: Scalar>(p: &HPolytope<S>, eps: &S) -> Result<Vec<Vec<S>>, AlgError> {
    if !p.simplex_prefix() {
        return Err(AlgError::InvalidInput("polytope does not start with a bounding simplex".into()));
    }
    let level = S::one() + eps.clone() / S::from_i64(2);
    simplex_corners(p, &level).map_err(|_| AlgError::InvalidInput("simplex rows are singular".into()))
}

pub(crate) fn check_run_input<S: Scalar>(p: &HPolytope<S>, eps: &S, experimental: bool) -> Result<(), AlgError> {
    if *eps <= S::zero() {
        return Err(AlgError::InvalidInput("epsilon must be positive".into()));
    }
    if p.d() < 2 {
        return Err(AlgError::InvalidInput("dimension must be at least 2".into()));
    }
    if p.d() >= 4 && !experimental {
        return Err(AlgError::InvalidInput(format!(
            "dimension {} needs the experimental flag; no approximation guarantee above 3",
            p.d()
        )));
    }
    Ok(())
}

/// Run the incidence-set algorithm on `P` and return `V ⊆ ℝ^d` with
/// `P ⊆ conv V ⊆ (1+ε)P`.
pub fn addm_run<S: Scalar>(p: &HPolytope<S>, eps: &S, opts: &AddmOptions) -> Result<AddmResult<S>, AlgError> {
    check_run_input(p, eps, opts.experimental)?;
    let corners = simplex_vertices(p, eps)?;
    let mut st = AddmState::new(p.d(), p.m(), Some(corners));
    let driver = Driver::geometric(p, eps);
    for row in p.d() + 1..p.m() {
        st.step_limited(row, &driver, opts.max_vertices)?;
    }
    Ok(st.finish())
}
