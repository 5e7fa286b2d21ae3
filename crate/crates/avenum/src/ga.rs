//! Plane-graph variant of the cutting algorithm (dimensions 2 and 3).
//!
//! The graph is kept embedded in the sphere. Crossing edges are subdivided,
//! then chords are drawn inside valid faces between new zero-class vertices,
//! and finally the plus class is removed.

use std::collections::{HashMap, HashSet, VecDeque};

use num_rational::BigRational;

use crate::addm::{check_run_input, simplex_vertices, AddmState};
use crate::dcel::{HalfEdgeId, PlaneGraph, Removal};
use crate::error::AlgError;
use crate::hrep::HPolytope;
use crate::numerics::Scalar;
use crate::partition::{Class, Driver, Origin, PartitionScript, VertexId, VertexLog};
use crate::verify::parity::{check_parity_2d, check_parity_3d, ParityStats};

/// How often the structural audit runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AuditLevel {
    #[default]
    Off,
    PerIteration,
    PerMutation,
}

/// Runtime checks for geometric runs.
#[derive(Debug, Clone)]
pub struct CheckOptions {
    /// Random directions per iteration for the parity checks.
    pub probes: usize,
    pub seed: u64,
    /// Check that every edge (plane) or face (space) sits in its half-space.
    pub kappa: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { probes: 32, seed: 0x5eed, kappa: true }
    }
}

#[derive(Debug, Clone, Default)]
pub struct GaOptions {
    pub audit: AuditLevel,
    pub checks: Option<CheckOptions>,
}

impl GaOptions {
    /// Every check on: audit after each mutation, parity and labels.
    pub fn verifying() -> Self {
        GaOptions { audit: AuditLevel::PerMutation, checks: Some(CheckOptions::default()) }
    }
}

/// Counters collected during a run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GaStats {
    pub splits: usize,
    pub chords: usize,
    pub deleted_vertices: usize,
    pub parallel_removed: usize,
    pub audits: usize,
    pub parity_probes: usize,
    /// Probes whose per-face parities were compared under a second `a`.
    pub a_checks: usize,
}

/// Where the chord scan found an admissible segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkSegment {
    pub from: HalfEdgeId,
    pub to: HalfEdgeId,
    /// Vertices strictly between the endpoints.
    pub intermediate: Vec<VertexId>,
}

/// Look for an admissible segment from `u0` to `w0` on a bounding walk of
/// the valid face `f`: all intermediate vertices in the plus class, or all of
/// them outside the minus class. Each walk is scanned from every occurrence
/// of `u0` forwards and backwards.
pub fn walk_admissible(g: &PlaneGraph, f: usize, u0: VertexId, w0: VertexId, class: &[Class]) -> Option<WalkSegment> {
    if !g.face(f).valid || u0 == w0 {
        return None;
    }
    for walk in g.bounding_walks(f) {
        let verts: Vec<VertexId> = walk.iter().map(|&h| g.origin(h)).collect();
        let n = verts.len();
        for k in (0..n).filter(|&k| verts[k] == u0) {
            for dir in [1, n - 1] {
                let mut mids = Vec::new();
                for s in 1..n {
                    let j = (k + s * dir) % n;
                    if verts[j] == w0 {
                        let all_plus = mids.iter().all(|&x: &VertexId| class[x] == Class::Plus);
                        let none_minus = mids.iter().all(|&x: &VertexId| class[x] != Class::Minus);
                        if all_plus || none_minus {
                            let (from, to) = if dir == 1 { (walk[k], walk[j]) } else { (walk[j], walk[k]) };
                            return Some(WalkSegment { from, to, intermediate: mids });
                        }
                        break;
                    }
                    mids.push(verts[j]);
                }
            }
        }
    }
    None
}

/// State of a graph run between iterations.
#[derive(Debug, Clone)]
pub struct GaState<S> {
    d: usize,
    graph: PlaneGraph,
    log: VertexLog<S>,
    class: Vec<Class>,
    opts: GaOptions,
    stats: GaStats,
}

/// Final state of a graph run.
#[derive(Debug, Clone)]
pub struct GaResult<S> {
    pub d: usize,
    pub graph: PlaneGraph,
    pub log: VertexLog<S>,
    pub vertices: Vec<VertexId>,
    pub stats: GaStats,
}

impl<S: Scalar> GaResult<S> {
    pub fn coords(&self) -> Vec<Vec<S>> {
        self.vertices.iter().filter_map(|&v| self.log.coord(v).map(<[S]>::to_vec)).collect()
    }

    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.graph.alive_edges().into_iter().map(|e| self.graph.endpoints(e)).collect()
    }
}

impl<S: Scalar> GaState<S> {
    pub fn new(d: usize, corners: Option<Vec<Vec<S>>>, opts: GaOptions) -> Result<Self, AlgError> {
        if !(2..=3).contains(&d) {
            return Err(AlgError::InvalidInput(format!("the graph algorithm needs d = 2 or 3, got {d}")));
        }
        let graph = PlaneGraph::init_complete(d);
        let mut log = VertexLog::new();
        let mut coords = corners.map(|c| c.into_iter());
        for j in 0..=d {
            log.push(Origin::Initial(j), coords.as_mut().and_then(|it| it.next()));
        }
        let st = GaState { d, graph, log, class: vec![Class::Minus; d + 1], opts, stats: GaStats::default() };
        st.audit(AuditLevel::PerIteration)?;
        Ok(st)
    }

    pub fn graph(&self) -> &PlaneGraph {
        &self.graph
    }

    pub fn log(&self) -> &VertexLog<S> {
        &self.log
    }

    pub fn stats(&self) -> &GaStats {
        &self.stats
    }

    fn audit(&self, at: AuditLevel) -> Result<(), AlgError> {
        if self.opts.audit == AuditLevel::Off || (at == AuditLevel::PerMutation && self.opts.audit != at) {
            return Ok(());
        }
        self.graph.audit().map_err(|v| AlgError::Structural(v.join("; ")))?;
        let invalid = self.graph.alive_faces().into_iter().filter(|&f| !self.graph.face(f).valid).count();
        let want = if self.d == 2 { 1 } else { 0 };
        if invalid != want {
            return Err(AlgError::Structural(format!("{invalid} invalid faces, expected {want}")));
        }
        Ok(())
    }

    fn mutated(&mut self) -> Result<(), AlgError> {
        if self.opts.audit == AuditLevel::PerMutation {
            self.stats.audits += 1;
        }
        self.audit(AuditLevel::PerMutation)
    }

    /// Process one row.
    pub fn step(&mut self, row: usize, driver: &Driver<'_, S>) -> Result<(), AlgError> {
        let alive = self.graph.alive_vertices();
        for &v in &alive {
            self.class[v] = driver.classify(row, self.log.get(v));
        }
        if !alive.iter().any(|&v| self.class[v] == Class::Minus) {
            return Err(AlgError::EmptyMinusClass { row });
        }

        for e in self.graph.alive_edges() {
            let (u, w) = self.graph.endpoints(e);
            let (mi, pl) = match (self.class[u], self.class[w]) {
                (Class::Minus, Class::Plus) => (u, w),
                (Class::Plus, Class::Minus) => (w, u),
                _ => continue,
            };
            let c = driver.place(row, self.log.coord(mi), self.log.coord(pl))?;
            let v = self.log.push(Origin::Split { row, minus: mi, plus: pl }, c);
            let gv = self.graph.add_vertex();
            debug_assert_eq!(v, gv);
            self.class.push(Class::Zero);
            self.graph.split_edge(e, v);
            self.stats.splits += 1;
            self.mutated()?;
        }

        self.insert_chords(row)?;

        for v in self.graph.alive_vertices() {
            if self.class[v] != Class::Plus {
                continue;
            }
            let removals = self.graph.delete_vertex(v);
            self.stats.deleted_vertices += 1;
            self.relabel_merges(&removals, row);
            self.mutated()?;
        }
        let removals = self.graph.dedupe_parallel_edges();
        self.stats.parallel_removed += removals.len();
        self.relabel_merges(&removals, row);
        if !removals.is_empty() {
            self.mutated()?;
        }

        self.audit(AuditLevel::PerIteration)?;
        if let (Some(chk), Driver::Geometric { p, .. }) = (self.opts.checks.clone(), driver) {
            self.run_checks(p, &chk, row)?;
        }
        Ok(())
    }

    fn relabel_merges(&mut self, removals: &[Removal], row: usize) {
        if self.d != 3 {
            return;
        }
        for r in removals {
            if let Removal::Merged { kept, .. } = *r {
                self.graph.set_face_kappa(kept, Some(row));
            }
        }
    }

    /// Second inner loop with the queue scheme: seed with half-edges of
    /// (zero, plus) edges, walk the incident face and draw every admissible
    /// chord, dropping queue members met on the way.
    fn insert_chords(&mut self, row: usize) -> Result<(), AlgError> {
        let g = &self.graph;
        let mut in_z = vec![false; self.class.len()];
        let mut queue = VecDeque::new();
        for e in g.alive_edges() {
            let (u, w) = g.endpoints(e);
            let z = match (self.class[u], self.class[w]) {
                (Class::Zero, Class::Plus) => u,
                (Class::Plus, Class::Zero) => w,
                _ => continue,
            };
            in_z[z] = true;
            queue.push_back(2 * e);
            queue.push_back(2 * e + 1);
        }
        let mut pending: HashSet<HalfEdgeId> = queue.iter().copied().collect();
        while let Some(h) = queue.pop_front() {
            if !pending.remove(&h) || !self.graph.face(self.graph.half_edge(h).face).valid {
                continue;
            }
            let mut work = vec![h];
            while let Some(r) = work.pop() {
                let cyc = self.graph.cycle(r);
                for x in &cyc {
                    pending.remove(x);
                }
                if let Some((hp, hq)) = self.scan_cycle(&cyc, &in_z) {
                    let kappa = if self.d == 2 { Some(row) } else { None };
                    let (ne, _) = self
                        .graph
                        .insert_chord(hp, hq, kappa)
                        .map_err(|e| AlgError::Structural(e.to_string()))?;
                    self.stats.chords += 1;
                    self.mutated()?;
                    work.push(2 * ne);
                    work.push(2 * ne + 1);
                }
            }
        }
        Ok(())
    }

    /// First admissible chord on one bounding walk, as half-edges leaving the
    /// two endpoints. Scanning forwards from every occurrence covers both
    /// directions.
    fn scan_cycle(&self, cyc: &[HalfEdgeId], in_z: &[bool]) -> Option<(HalfEdgeId, HalfEdgeId)> {
        let n = cyc.len();
        let verts: Vec<VertexId> = cyc.iter().map(|&h| self.graph.origin(h)).collect();
        for k in 0..n {
            let u = verts[k];
            if !in_z[u] {
                continue;
            }
            for s in 1..n {
                let j = (k + s) % n;
                let x = verts[j];
                if x != u && in_z[x] && !self.graph.adjacent(u, x) {
                    return Some((cyc[k], cyc[j]));
                }
                if self.class[x] == Class::Minus {
                    break;
                }
            }
        }
        None
    }

    fn exact_coords(&self) -> Vec<Vec<BigRational>> {
        self.log
            .records()
            .iter()
            .map(|r| r.coord.as_ref().map(|c| c.iter().map(Scalar::to_rational).collect()).unwrap_or_default())
            .collect()
    }

    fn run_checks(&mut self, p: &HPolytope<S>, chk: &CheckOptions, row: usize) -> Result<(), AlgError> {
        let coords = self.exact_coords();
        let rows: Vec<Vec<BigRational>> = p.rows().iter().map(|r| r.iter().map(Scalar::to_rational).collect()).collect();
        if chk.kappa {
            self.check_kappa(&coords, &rows)?;
        }
        if chk.probes > 0 {
            let seed = chk.seed ^ (row as u64).wrapping_mul(0x9e37_79b9);
            let stats: ParityStats = if self.d == 2 {
                check_parity_2d(&self.graph, &coords, chk.probes, seed)
            } else {
                check_parity_3d(&self.graph, &coords, &rows, chk.probes, seed)
            }
            .map_err(|e| AlgError::Parity(format!("row {row}: {e}")))?;
            self.stats.parity_probes += stats.probes;
            self.stats.a_checks += stats.a_checks;
        }
        Ok(())
    }

    fn check_kappa(&self, coords: &[Vec<BigRational>], rows: &[Vec<BigRational>]) -> Result<(), AlgError> {
        let one = <BigRational as Scalar>::one();
        let inside = |k: usize, v: VertexId| crate::numerics::dot(&rows[k], &coords[v]) >= one;
        if self.d == 2 {
            for e in self.graph.alive_edges() {
                let (u, w) = self.graph.endpoints(e);
                let k = self.graph.edge_kappa(e).ok_or_else(|| AlgError::Kappa(format!("edge {u}-{w} unlabelled")))?;
                if !inside(k, u) || !inside(k, w) {
                    return Err(AlgError::Kappa(format!("edge {u}-{w} leaves half-plane of row {k}")));
                }
            }
        } else {
            for f in self.graph.alive_faces() {
                let vs = self.graph.face_vertices(f);
                if vs.is_empty() {
                    continue;
                }
                let k = self.graph.face(f).kappa.ok_or_else(|| AlgError::Kappa(format!("face {f} unlabelled")))?;
                if let Some(v) = vs.into_iter().find(|&v| !inside(k, v)) {
                    return Err(AlgError::Kappa(format!("vertex {v} of face {f} leaves half-space of row {k}")));
                }
            }
        }
        Ok(())
    }

    pub fn finish(self) -> GaResult<S> {
        let vertices = self.graph.alive_vertices();
        GaResult { d: self.d, graph: self.graph, log: self.log, vertices, stats: self.stats }
    }
}

/// Abstract run over rows `d+1..m` driven by a partition script.
pub fn core_ga(d: usize, m: usize, script: &dyn PartitionScript, opts: GaOptions) -> Result<GaResult<f64>, AlgError> {
    let mut st = GaState::<f64>::new(d, None, opts)?;
    let driver = Driver::Script(script);
    for row in d + 1..m {
        st.step(row, &driver)?;
    }
    Ok(st.finish())
}

/// Run the graph algorithm on `P` (d = 2 or 3).
pub fn ga_run<S: Scalar>(p: &HPolytope<S>, eps: &S, opts: GaOptions) -> Result<GaResult<S>, AlgError> {
    check_run_input(p, eps, false)?;
    let corners = simplex_vertices(p, eps)?;
    let mut st = GaState::new(p.d(), Some(corners), opts)?;
    let driver = Driver::geometric(p, eps);
    for row in p.d() + 1..p.m() {
        st.step(row, &driver)?;
    }
    Ok(st.finish())
}

/// Sizes seen by [`check_subgraph`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SubgraphStats {
    pub ga_vertices: usize,
    pub ga_edges: usize,
    pub addm_vertices: usize,
    pub addm_edges: usize,
    pub faces_checked: usize,
    /// Faces whose vertices share fewer than `d-2` rows.
    pub thin_faces: usize,
}

impl SubgraphStats {
    pub fn holds(&self) -> bool {
        self.thin_faces == 0
    }
}

/// Check that the graph state is a subgraph of the incidence state and count
/// the faces whose vertices share fewer than `d-2` rows. Only the subgraph
/// part is an error; see [`SubgraphStats::holds`] for the face count.
pub fn check_subgraph<S: Scalar, T: Scalar>(ga: &GaState<S>, addm: &AddmState<T>) -> Result<SubgraphStats, AlgError> {
    let g = &ga.graph;
    let mut memo = HashMap::new();
    let mut map = HashMap::new();
    for v in g.alive_vertices() {
        let Some(w) = ga.log.map_into(v, addm.log(), &mut memo) else {
            return Err(AlgError::Subgraph(format!("vertex {v} has no counterpart")));
        };
        if !addm.alive().contains(&w) {
            return Err(AlgError::Subgraph(format!("counterpart of vertex {v} was removed")));
        }
        map.insert(v, w);
    }
    let edge_set: HashSet<(VertexId, VertexId)> =
        addm.edges().iter().map(|&(a, b)| if a < b { (a, b) } else { (b, a) }).collect();
    let edges = g.alive_edges();
    for &e in &edges {
        let (u, w) = g.endpoints(e);
        let (a, b) = (map[&u], map[&w]);
        if !edge_set.contains(&if a < b { (a, b) } else { (b, a) }) {
            return Err(AlgError::Subgraph(format!("edge {u}-{w} missing from the incidence graph")));
        }
    }
    let need = ga.d.saturating_sub(2);
    let faces = g.alive_faces();
    let mut thin_faces = 0;
    for &f in &faces {
        let vs = g.face_vertices(f);
        let Some((&first, rest)) = vs.split_first() else { continue };
        let common = rest.iter().fold(addm.incidence(map[&first]).clone(), |acc, v| acc.intersect(addm.incidence(map[v])));
        if common.len() < need {
            thin_faces += 1;
        }
    }
    Ok(SubgraphStats {
        ga_vertices: map.len(),
        ga_edges: edges.len(),
        addm_vertices: addm.alive().len(),
        addm_edges: addm.edges().len(),
        faces_checked: faces.len(),
        thin_faces,
    })
}

/// Outcome of [`paired_core_run`].
#[derive(Debug, Clone)]
pub struct PairedRun {
    pub ga: GaResult<f64>,
    /// One entry for the initial state and one per processed row.
    pub trail: Vec<SubgraphStats>,
    /// Row count actually processed; below `m` when the size cap stopped the run.
    pub m_done: usize,
}

impl PairedRun {
    pub fn faces_hold(&self) -> bool {
        self.trail.iter().all(SubgraphStats::holds)
    }
}

/// Run both cores side by side on one script, checking the subgraph
/// relation after initialisation and after every iteration. The incidence
/// graph can grow very fast under arbitrary scripts, so the run stops before
/// any row that would leave more than `cap` vertices in it.
pub fn paired_core_run(d: usize, m: usize, script: &dyn PartitionScript, opts: GaOptions, cap: usize) -> Result<PairedRun, AlgError> {
    let mut ga = GaState::<f64>::new(d, None, opts)?;
    let mut addm = AddmState::<f64>::new(d, m, None);
    let driver = Driver::Script(script);
    let mut trail = vec![check_subgraph(&ga, &addm)?];
    let mut m_done = d + 1;
    for row in d + 1..m {
        let mut next = addm.clone();
        next.step(row, &driver)?;
        if next.alive().len() > cap {
            break;
        }
        ga.step(row, &driver)?;
        addm = next;
        trail.push(check_subgraph(&ga, &addm)?);
        m_done = row + 1;
    }
    Ok(PairedRun { ga: ga.finish(), trail, m_done })
}
