//! Vertex classes, provenance, and the rules that drive an iteration.
//!
//! Both algorithms classify the current vertices against the next row into
//! minus, zero and plus classes. Either a geometric rule does this from the
//! coordinates (quarter-ε bands) or a script does it abstractly, which is how
//! the combinatorial cores are exercised.

use std::collections::HashMap;

use crate::error::AlgError;
use crate::hrep::HPolytope;
use crate::numerics::{dot, Scalar};

pub type VertexId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Class {
    Minus,
    Zero,
    Plus,
}

/// How a vertex came to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    /// Corner `j` of the starting simplex.
    Initial(usize),
    /// Created while processing `row` on the edge between `minus` and `plus`.
    Split { row: usize, minus: VertexId, plus: VertexId },
}

#[derive(Debug, Clone)]
pub struct VertexRecord<S> {
    pub origin: Origin,
    /// Structural hash of the origin tree; equal across runs for equal trees.
    pub key: u64,
    pub coord: Option<Vec<S>>,
}

/// Every vertex a run ever created, indexed by id.
#[derive(Debug, Clone)]
pub struct VertexLog<S> {
    records: Vec<VertexRecord<S>>,
    by_origin: HashMap<Origin, VertexId>,
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Key of initial corner `j`.
pub fn initial_key(j: usize) -> u64 {
    mix(j as u64 ^ 0x1234_5678)
}

/// Key of the vertex created at `row` between the given parents.
pub fn split_key(row: usize, minus_key: u64, plus_key: u64) -> u64 {
    mix(mix(mix(row as u64).wrapping_add(minus_key)) ^ plus_key.rotate_left(17))
}

impl<S: Scalar> VertexLog<S> {
    pub fn new() -> Self {
        VertexLog { records: Vec::new(), by_origin: HashMap::new() }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, v: VertexId) -> &VertexRecord<S> {
        &self.records[v]
    }

    pub fn records(&self) -> &[VertexRecord<S>] {
        &self.records
    }

    pub fn coord(&self, v: VertexId) -> Option<&[S]> {
        self.records[v].coord.as_deref()
    }

    pub fn find(&self, origin: &Origin) -> Option<VertexId> {
        self.by_origin.get(origin).copied()
    }

    pub fn push(&mut self, origin: Origin, coord: Option<Vec<S>>) -> VertexId {
        let key = match origin {
            Origin::Initial(j) => initial_key(j),
            Origin::Split { row, minus, plus } => {
                split_key(row, self.records[minus].key, self.records[plus].key)
            }
        };
        let id = self.records.len();
        self.records.push(VertexRecord { origin, key, coord });
        self.by_origin.insert(origin, id);
        id
    }

    /// Translate a vertex id of `self` into the id of the structurally equal
    /// vertex of `other`, if `other` has one.
    pub fn map_into<T: Scalar>(&self, v: VertexId, other: &VertexLog<T>, memo: &mut HashMap<VertexId, Option<VertexId>>) -> Option<VertexId> {
        if let Some(hit) = memo.get(&v) {
            return *hit;
        }
        let out = match self.records[v].origin {
            Origin::Initial(j) => other.find(&Origin::Initial(j)),
            Origin::Split { row, minus, plus } => {
                let mi = self.map_into(minus, other, memo);
                let pl = self.map_into(plus, other, memo);
                match (mi, pl) {
                    (Some(mi), Some(pl)) => other.find(&Origin::Split { row, minus: mi, plus: pl }),
                    _ => None,
                }
            }
        };
        memo.insert(v, out);
        out
    }
}

impl<S: Scalar> Default for VertexLog<S> {
    fn default() -> Self {
        Self::new()
    }
}

/// Abstract partition of the vertices for each row.
pub trait PartitionScript: Sync {
    fn class(&self, row: usize, key: u64) -> Class;
}

impl<F: Fn(usize, u64) -> Class + Sync> PartitionScript for F {
    fn class(&self, row: usize, key: u64) -> Class {
        self(row, key)
    }
}

/// Seeded pseudo-random script. Corner 0 is always in the minus class, so
/// the minus class is never empty and corner 0 survives in every graph.
#[derive(Debug, Clone, Copy)]
pub struct RandomScript {
    pub seed: u64,
    /// Probabilities of the minus and zero classes, in 1/1000.
    pub minus_permille: u64,
    pub zero_permille: u64,
}

impl RandomScript {
    pub fn new(seed: u64) -> Self {
        RandomScript { seed, minus_permille: 450, zero_permille: 200 }
    }
}

impl PartitionScript for RandomScript {
    fn class(&self, row: usize, key: u64) -> Class {
        if key == initial_key(0) {
            return Class::Minus;
        }
        let r = mix(mix(self.seed ^ key).wrapping_add(row as u64)) % 1000;
        if r < self.minus_permille {
            Class::Minus
        } else if r < self.minus_permille + self.zero_permille {
            Class::Zero
        } else {
            Class::Plus
        }
    }
}

/// Geometric partition: minus below `1+ε/4`, plus above `1+3ε/4`, zero in
/// between; new points are placed at level `1+ε/2`.
#[derive(Debug, Clone)]
pub struct Bands<S> {
    pub lo: S,
    pub hi: S,
    pub target: S,
}

impl<S: Scalar> Bands<S> {
    pub fn new(eps: &S) -> Self {
        let one = S::one();
        Bands {
            lo: one.clone() + eps.clone() / S::from_i64(4),
            hi: one.clone() + eps.clone() * S::from_ratio(3, 4),
            target: one + eps.clone() / S::from_i64(2),
        }
    }

    pub fn classify(&self, value: &S) -> Class {
        if *value < self.lo {
            Class::Minus
        } else if *value > self.hi {
            Class::Plus
        } else {
            Class::Zero
        }
    }
}

/// What drives an iteration.
pub enum Driver<'a, S> {
    Geometric { p: &'a HPolytope<S>, bands: Bands<S> },
    Script(&'a dyn PartitionScript),
}

impl<'a, S: Scalar> Driver<'a, S> {
    pub fn geometric(p: &'a HPolytope<S>, eps: &S) -> Self {
        Driver::Geometric { p, bands: Bands::new(eps) }
    }

    pub fn classify(&self, row: usize, rec: &VertexRecord<S>) -> Class {
        match self {
            Driver::Geometric { p, bands } => {
                let c = rec.coord.as_deref().expect("geometric runs carry coordinates");
                bands.classify(&p.eval(row, c))
            }
            Driver::Script(s) => s.class(row, rec.key),
        }
    }

    /// Point on the segment from `minus` to `plus` at level `1+ε/2` of `row`.
    pub fn place(&self, row: usize, minus: Option<&[S]>, plus: Option<&[S]>) -> Result<Option<Vec<S>>, AlgError> {
        let Driver::Geometric { p, bands } = self else { return Ok(None) };
        let (cu, cw) = (minus.expect("coordinates"), plus.expect("coordinates"));
        let a = p.row(row);
        let au = dot(a, cu);
        let aw = dot(a, cw);
        let denom = aw - au.clone();
        if denom <= S::zero() {
            return Err(AlgError::ImprecisionAlarm { row, detail: "crossing edge does not cross".into() });
        }
        let t = (bands.target.clone() - au) / denom;
        let c: Vec<S> = cu.iter().zip(cw).map(|(x, y)| x.clone() + t.clone() * (y.clone() - x.clone())).collect();
        let level = dot(a, &c);
        if bands.classify(&level) != Class::Zero {
            return Err(AlgError::ImprecisionAlarm { row, detail: format!("placed at level {level}") });
        }
        Ok(Some(c))
    }
}

/// Fixed-width bitset over row indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    words: Vec<u64>,
}

impl IndexSet {
    pub fn with_capacity(m: usize) -> Self {
        IndexSet { words: vec![0; m.div_ceil(64).max(1)] }
    }

    pub fn from_iter(m: usize, it: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::with_capacity(m);
        for i in it {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w & (1 << (i % 64)) != 0)
    }

    pub fn intersect(&self, o: &Self) -> Self {
        IndexSet { words: self.words.iter().zip(&o.words).map(|(a, b)| a & b).collect() }
    }

    pub fn intersect_count(&self, o: &Self) -> u32 {
        self.words.iter().zip(&o.words).map(|(a, b)| (a & b).count_ones()).sum()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(k, &w)| (0..64).filter(move |b| w & (1 << b) != 0).map(move |b| k * 64 + b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;
    use num_rational::BigRational;

    #[test]
    fn index_set_ops() {
        let a = IndexSet::from_iter(130, [1, 64, 129]);
        let b = IndexSet::from_iter(130, [1, 2, 129]);
        assert_eq!(a.intersect_count(&b), 2);
        assert_eq!(a.intersect(&b).iter().collect::<Vec<_>>(), vec![1, 129]);
        assert_eq!(a.len(), 3);
        assert!(!a.contains(2));
    }

    #[test]
    fn keys_are_structural() {
        let mut a: VertexLog<BigRational> = VertexLog::new();
        let mut b: VertexLog<BigRational> = VertexLog::new();
        for j in 0..3 {
            a.push(Origin::Initial(j), None);
        }
        // b creates corners in another order
        for j in [2, 0, 1] {
            b.push(Origin::Initial(j), None);
        }
        let va = a.push(Origin::Split { row: 3, minus: 0, plus: 2 }, None);
        let vb = b.push(Origin::Split { row: 3, minus: 1, plus: 0 }, None);
        assert_eq!(a.get(va).key, b.get(vb).key);
        let mut memo = HashMap::new();
        assert_eq!(a.map_into(va, &b, &mut memo), Some(vb));
    }

    #[test]
    fn bands_split_the_line() {
        let b = Bands::new(&ratio(1, 1));
        assert_eq!(b.classify(&ratio(5, 4)), Class::Zero);
        assert_eq!(b.classify(&ratio(7, 4)), Class::Zero);
        assert_eq!(b.classify(&ratio(124, 100)), Class::Minus);
        assert_eq!(b.classify(&ratio(176, 100)), Class::Plus);
        assert_eq!(b.target, ratio(3, 2));
    }

    #[test]
    fn random_script_pins_corner_zero() {
        let s = RandomScript::new(7);
        for row in 0..50 {
            assert_eq!(s.class(row, initial_key(0)), Class::Minus);
        }
    }
}
