//! Half-edge structure for plane graphs with disconnected face boundaries.
//!
//! Half-edges come in twin pairs `(2e, 2e+1)`, so `e` names the undirected
//! edge. Each face keeps one representative half-edge per boundary cycle;
//! a face may have several cycles once the graph falls apart, and isolated
//! vertices stay in the vertex table without any half-edge.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::partition::VertexId;

pub type HalfEdgeId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DcelError {
    #[error("half-edges {0} and {1} do not lie on one bounding walk of a face")]
    NotOnSameWalk(HalfEdgeId, HalfEdgeId),
    #[error("chord endpoints coincide at vertex {0}")]
    Loop(VertexId),
    #[error("vertex {0} still has edges")]
    NotIsolated(VertexId),
    #[error("dead element {0}")]
    Dead(String),
}

#[derive(Debug, Clone)]
pub struct HalfEdge {
    pub origin: VertexId,
    pub next: HalfEdgeId,
    pub prev: HalfEdgeId,
    pub face: FaceId,
    pub alive: bool,
}

#[derive(Debug, Clone)]
pub struct Face {
    pub valid: bool,
    /// Row label carried by the face (used in dimension 3).
    pub kappa: Option<usize>,
    pub alive: bool,
    /// One half-edge per boundary cycle.
    pub boundary: Vec<HalfEdgeId>,
}

#[derive(Debug, Clone)]
struct VertexSlot {
    alive: bool,
    out: Option<HalfEdgeId>,
}

/// Faces touched when an edge was removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Removal {
    /// Two faces became one; `removed` is gone and `kept` holds the union.
    Merged { kept: FaceId, removed: FaceId },
    /// The edge had the same face on both sides.
    SameFace(FaceId),
}

#[inline]
pub fn twin(h: HalfEdgeId) -> HalfEdgeId {
    h ^ 1
}

#[derive(Debug, Clone, Default)]
pub struct PlaneGraph {
    half_edges: Vec<HalfEdge>,
    faces: Vec<Face>,
    vertices: Vec<VertexSlot>,
    /// Row label per undirected edge (used in dimension 2).
    edge_kappa: Vec<Option<usize>>,
    adjacency: HashMap<(VertexId, VertexId), u32>,
}

fn pair(u: VertexId, w: VertexId) -> (VertexId, VertexId) {
    if u < w {
        (u, w)
    } else {
        (w, u)
    }
}

impl PlaneGraph {
    /// Build a connected graph from oriented face cycles. Every directed pair
    /// `u→w` must appear at most once, and `w→u` must appear in another cycle.
    pub fn from_cycles(n_vertices: usize, cycles: &[(Vec<VertexId>, bool, Option<usize>)]) -> Self {
        let mut g = PlaneGraph {
            vertices: vec![VertexSlot { alive: true, out: None }; n_vertices],
            ..Default::default()
        };
        let mut directed: HashMap<(VertexId, VertexId), HalfEdgeId> = HashMap::new();
        for (f, (cyc, valid, kappa)) in cycles.iter().enumerate() {
            g.faces.push(Face { valid: *valid, kappa: *kappa, alive: true, boundary: Vec::new() });
            let hs: Vec<HalfEdgeId> = (0..cyc.len())
                .map(|k| {
                    let (u, w) = (cyc[k], cyc[(k + 1) % cyc.len()]);
                    let h = match directed.get(&(w, u)) {
                        Some(&t) => twin(t),
                        None => {
                            let e = g.new_edge_pair(u, w, None);
                            directed.insert((u, w), 2 * e);
                            2 * e
                        }
                    };
                    g.half_edges[h].face = f;
                    g.vertices[u].out = Some(h);
                    h
                })
                .collect();
            for k in 0..hs.len() {
                let (h, n) = (hs[k], hs[(k + 1) % hs.len()]);
                g.half_edges[h].next = n;
                g.half_edges[n].prev = h;
            }
            g.faces[f].boundary.push(hs[0]);
        }
        g
    }

    /// Complete graph on the `d+1` corners of the starting simplex, embedded
    /// as a triangle (`d = 2`, one valid and one invalid face) or a
    /// tetrahedron (`d = 3`, four valid faces). Labels: in the plane the edge
    /// `{j,k}` carries the remaining row; in space the face opposite corner
    /// `j` carries row `j`.
    pub fn init_complete(d: usize) -> Self {
        match d {
            2 => {
                let mut g = Self::from_cycles(3, &[(vec![0, 1, 2], true, None), (vec![0, 2, 1], false, None)]);
                for e in 0..g.edge_kappa.len() {
                    let (u, w) = g.endpoints(e);
                    g.edge_kappa[e] = Some(3 - u - w);
                }
                g
            }
            3 => Self::from_cycles(
                4,
                &[
                    (vec![1, 2, 3], true, Some(0)),
                    (vec![0, 3, 2], true, Some(1)),
                    (vec![0, 1, 3], true, Some(2)),
                    (vec![0, 2, 1], true, Some(3)),
                ],
            ),
            _ => panic!("plane graphs are only built for d = 2 or 3"),
        }
    }

    fn new_edge_pair(&mut self, u: VertexId, w: VertexId, kappa: Option<usize>) -> EdgeId {
        let e = self.edge_kappa.len();
        for (o, _) in [(u, w), (w, u)] {
            self.half_edges.push(HalfEdge { origin: o, next: usize::MAX, prev: usize::MAX, face: usize::MAX, alive: true });
        }
        self.edge_kappa.push(kappa);
        *self.adjacency.entry(pair(u, w)).or_insert(0) += 1;
        e
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.vertices.push(VertexSlot { alive: true, out: None });
        self.vertices.len() - 1
    }

    /// Mark vertex ids up to `n` as known but dead (keeps ids in step with a log).
    pub fn reserve_dead_vertices(&mut self, n: usize) {
        while self.vertices.len() < n {
            self.vertices.push(VertexSlot { alive: false, out: None });
        }
    }

    pub fn n_vertex_slots(&self) -> usize {
        self.vertices.len()
    }

    pub fn half_edge(&self, h: HalfEdgeId) -> &HalfEdge {
        &self.half_edges[h]
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    pub fn set_face_kappa(&mut self, f: FaceId, kappa: Option<usize>) {
        self.faces[f].kappa = kappa;
    }

    pub fn edge_kappa(&self, e: EdgeId) -> Option<usize> {
        self.edge_kappa[e]
    }

    pub fn origin(&self, h: HalfEdgeId) -> VertexId {
        self.half_edges[h].origin
    }

    pub fn dest(&self, h: HalfEdgeId) -> VertexId {
        self.half_edges[twin(h)].origin
    }

    pub fn next(&self, h: HalfEdgeId) -> HalfEdgeId {
        self.half_edges[h].next
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        (self.origin(2 * e), self.origin(2 * e + 1))
    }

    pub fn vertex_alive(&self, v: VertexId) -> bool {
        self.vertices.get(v).is_some_and(|s| s.alive)
    }

    pub fn alive_vertices(&self) -> Vec<VertexId> {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].alive).collect()
    }

    pub fn alive_edges(&self) -> Vec<EdgeId> {
        (0..self.edge_kappa.len()).filter(|&e| self.half_edges[2 * e].alive).collect()
    }

    pub fn alive_faces(&self) -> Vec<FaceId> {
        (0..self.faces.len()).filter(|&f| self.faces[f].alive).collect()
    }

    pub fn adjacent(&self, u: VertexId, w: VertexId) -> bool {
        self.adjacency.get(&pair(u, w)).is_some_and(|&c| c > 0)
    }

    /// Outgoing half-edges of `v` in rotation order.
    pub fn outgoing(&self, v: VertexId) -> Vec<HalfEdgeId> {
        let mut out = Vec::new();
        let Some(start) = self.vertices[v].out else { return out };
        let mut h = start;
        loop {
            out.push(h);
            h = self.half_edges[twin(h)].next;
            if h == start || out.len() > self.half_edges.len() {
                break;
            }
        }
        out
    }

    pub fn neighbours(&self, v: VertexId) -> Vec<VertexId> {
        self.outgoing(v).into_iter().map(|h| self.dest(h)).collect()
    }

    /// Half-edges of the cycle through `h`, starting at `h`.
    pub fn cycle(&self, h: HalfEdgeId) -> Vec<HalfEdgeId> {
        let mut out = vec![h];
        let mut x = self.half_edges[h].next;
        while x != h {
            out.push(x);
            x = self.half_edges[x].next;
            if out.len() > self.half_edges.len() {
                panic!("half-edge cycle through {h} does not close");
            }
        }
        out
    }

    /// Boundary cycles of `f`, one per representative.
    pub fn bounding_walks(&self, f: FaceId) -> Vec<Vec<HalfEdgeId>> {
        self.faces[f].boundary.iter().map(|&h| self.cycle(h)).collect()
    }

    /// Vertices on the boundary of `f`, without repetition.
    pub fn face_vertices(&self, f: FaceId) -> Vec<VertexId> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for w in self.bounding_walks(f) {
            for h in w {
                let v = self.origin(h);
                if seen.insert(v) {
                    out.push(v);
                }
            }
        }
        out
    }

    /// Subdivide edge `e = {u, w}` (oriented `2e: u→w`) at the fresh isolated
    /// vertex `v`. Edge `e` becomes `u–v`; the returned edge is `v–w` and
    /// inherits the label of `e`.
    pub fn split_edge(&mut self, e: EdgeId, v: VertexId) -> EdgeId {
        assert!(self.vertices[v].out.is_none(), "split vertex must be fresh");
        let (h, t) = (2 * e, 2 * e + 1);
        let (u, w) = (self.origin(h), self.origin(t));
        let nh = self.half_edges[h].next;
        let pt = self.half_edges[t].prev;
        let kappa = self.edge_kappa[e];
        let ne = self.new_edge_pair(v, w, kappa);
        let (a, b) = (2 * ne, 2 * ne + 1);
        *self.adjacency.get_mut(&pair(u, w)).unwrap() -= 1;
        *self.adjacency.entry(pair(u, v)).or_insert(0) += 1;
        self.half_edges[a].face = self.half_edges[h].face;
        self.half_edges[b].face = self.half_edges[t].face;
        self.half_edges[t].origin = v;
        if nh == t {
            self.link(h, a);
            self.link(a, b);
            self.link(b, t);
        } else {
            self.link(h, a);
            self.link(a, nh);
            self.link(pt, b);
            self.link(b, t);
        }
        self.vertices[v].out = Some(a);
        if self.vertices[w].out == Some(t) {
            self.vertices[w].out = Some(b);
        }
        ne
    }

    fn link(&mut self, a: HalfEdgeId, b: HalfEdgeId) {
        self.half_edges[a].next = b;
        self.half_edges[b].prev = a;
    }

    /// Insert the chord from `origin(hp)` to `origin(hq)` inside their common
    /// face. The part of the walk from `hp` up to (not including) `hq` goes to
    /// a new face, which inherits validity and label. Returns the new edge,
    /// oriented `origin(hp) → origin(hq)`, and the new face.
    pub fn insert_chord(&mut self, hp: HalfEdgeId, hq: HalfEdgeId, kappa: Option<usize>) -> Result<(EdgeId, FaceId), DcelError> {
        if !self.half_edges[hp].alive || !self.half_edges[hq].alive {
            return Err(DcelError::Dead(format!("half-edge {hp} or {hq}")));
        }
        let f = self.half_edges[hp].face;
        if self.half_edges[hq].face != f {
            return Err(DcelError::NotOnSameWalk(hp, hq));
        }
        let cyc = self.cycle(hp);
        let Some(pos) = cyc.iter().position(|&x| x == hq) else {
            return Err(DcelError::NotOnSameWalk(hp, hq));
        };
        let (p, q) = (self.origin(hp), self.origin(hq));
        if p == q {
            return Err(DcelError::Loop(p));
        }
        let pp = self.half_edges[hp].prev;
        let pq = self.half_edges[hq].prev;
        let ne = self.new_edge_pair(p, q, kappa);
        let (a, b) = (2 * ne, 2 * ne + 1);
        self.link(pp, a);
        self.link(a, hq);
        self.link(pq, b);
        self.link(b, hp);
        let g = self.faces.len();
        self.faces.push(Face { valid: self.faces[f].valid, kappa: self.faces[f].kappa, alive: true, boundary: vec![b] });
        self.half_edges[a].face = f;
        self.half_edges[b].face = g;
        for &x in &cyc[..pos] {
            self.half_edges[x].face = g;
        }
        let cycle_set: HashSet<HalfEdgeId> = cyc.into_iter().collect();
        let rep = self.faces[f].boundary.iter().position(|r| cycle_set.contains(r)).expect("face lists its cycle");
        self.faces[f].boundary[rep] = a;
        Ok((ne, g))
    }

    /// Remove edge `e`. Merging two faces keeps the lower id, sets validity to
    /// the conjunction and clears the label unless both labels agree.
    pub fn delete_edge(&mut self, e: EdgeId) -> Removal {
        let (h, t) = (2 * e, 2 * e + 1);
        assert!(self.half_edges[h].alive, "edge {e} already deleted");
        let (u, w) = (self.origin(h), self.origin(t));
        let (fh, ft) = (self.half_edges[h].face, self.half_edges[t].face);
        let (ph, nh) = (self.half_edges[h].prev, self.half_edges[h].next);
        let (pt, nt) = (self.half_edges[t].prev, self.half_edges[t].next);
        let removal = if fh != ft {
            let (kept, removed) = if fh < ft { (fh, ft) } else { (ft, fh) };
            let cyc_h: HashSet<HalfEdgeId> = self.cycle(h).into_iter().collect();
            let cyc_t: HashSet<HalfEdgeId> = self.cycle(t).into_iter().collect();
            let moved: Vec<HalfEdgeId> = self.bounding_walks(removed).into_iter().flatten().collect();
            for x in moved {
                self.half_edges[x].face = kept;
            }
            self.link(ph, nt);
            self.link(pt, nh);
            let mut reps: Vec<HalfEdgeId> = Vec::new();
            for f in [kept, removed] {
                reps.extend(self.faces[f].boundary.iter().copied().filter(|r| !cyc_h.contains(r) && !cyc_t.contains(r)));
            }
            reps.push(nh);
            let valid = self.faces[fh].valid && self.faces[ft].valid;
            let kappa = if self.faces[fh].kappa == self.faces[ft].kappa { self.faces[fh].kappa } else { None };
            let fk = &mut self.faces[kept];
            fk.boundary = reps;
            fk.valid = valid;
            fk.kappa = kappa;
            let fr = &mut self.faces[removed];
            fr.alive = false;
            fr.boundary.clear();
            Removal::Merged { kept, removed }
        } else {
            let cyc: HashSet<HalfEdgeId> = self.cycle(h).into_iter().collect();
            let mut reps: Vec<HalfEdgeId> = self.faces[fh].boundary.iter().copied().filter(|r| !cyc.contains(r)).collect();
            let w_pendant = nh == t;
            let u_pendant = nt == h;
            if !u_pendant {
                self.link(ph, nt);
                reps.push(nt);
            }
            if !w_pendant {
                self.link(pt, nh);
                reps.push(nh);
            }
            self.faces[fh].boundary = reps;
            Removal::SameFace(fh)
        };
        if self.vertices[u].out == Some(h) {
            self.vertices[u].out = if nt != h { Some(nt) } else { None };
        }
        if self.vertices[w].out == Some(t) {
            self.vertices[w].out = if nh != t { Some(nh) } else { None };
        }
        self.half_edges[h].alive = false;
        self.half_edges[t].alive = false;
        *self.adjacency.get_mut(&pair(u, w)).unwrap() -= 1;
        removal
    }

    /// Delete every edge at `v`, then `v` itself.
    pub fn delete_vertex(&mut self, v: VertexId) -> Vec<Removal> {
        let mut out = Vec::new();
        while let Some(h) = self.vertices[v].out {
            out.push(self.delete_edge(h / 2));
        }
        self.vertices[v].alive = false;
        out
    }

    /// Remove duplicate edges between the same pair of vertices, keeping the
    /// oldest one.
    pub fn dedupe_parallel_edges(&mut self) -> Vec<Removal> {
        let mut seen: HashSet<(VertexId, VertexId)> = HashSet::new();
        let mut out = Vec::new();
        for e in self.alive_edges() {
            let (u, w) = self.endpoints(e);
            if self.adjacency[&pair(u, w)] > 1 && !seen.insert(pair(u, w)) {
                out.push(self.delete_edge(e));
            } else {
                seen.insert(pair(u, w));
            }
        }
        out
    }

    /// Connected components, counting isolated vertices.
    pub fn components(&self) -> usize {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in self.alive_edges() {
            let (u, w) = self.endpoints(e);
            let (a, b) = (find(&mut parent, u), find(&mut parent, w));
            parent[a] = b;
        }
        (0..n).filter(|&v| self.vertices[v].alive && find(&mut parent, v) == v).count()
    }

    /// Structural self-check: twin/next/prev consistency, face bookkeeping,
    /// vertex records, the adjacency cache, and Euler's relation with
    /// components. Returns every violation found.
    pub fn audit(&self) -> Result<(), Vec<String>> {
        let mut bad = Vec::new();
        let mut on_cycle_of: HashMap<HalfEdgeId, HalfEdgeId> = HashMap::new();
        let mut adj: HashMap<(VertexId, VertexId), u32> = HashMap::new();
        for (h, he) in self.half_edges.iter().enumerate() {
            if !he.alive {
                continue;
            }
            if !self.half_edges[twin(h)].alive {
                bad.push(format!("half-edge {h} alive but twin dead"));
                continue;
            }
            if he.origin == self.dest(h) {
                bad.push(format!("half-edge {h} is a loop"));
            }
            if !self.vertex_alive(he.origin) {
                bad.push(format!("half-edge {h} starts at dead vertex {}", he.origin));
            }
            let n = he.next;
            if !self.half_edges[n].alive || self.half_edges[n].prev != h {
                bad.push(format!("next/prev mismatch at {h}"));
            }
            if self.half_edges[n].origin != self.dest(h) {
                bad.push(format!("half-edge {h} does not chain into its next {n}"));
            }
            if self.half_edges[n].face != he.face {
                bad.push(format!("half-edge {h} and next {n} disagree on face"));
            }
            if !self.faces[he.face].alive {
                bad.push(format!("half-edge {h} on dead face {}", he.face));
            }
            if h % 2 == 0 {
                *adj.entry(pair(he.origin, self.dest(h))).or_insert(0) += 1;
            }
        }
        if !bad.is_empty() {
            return Err(bad);
        }
        for (f, face) in self.faces.iter().enumerate() {
            if !face.alive {
                continue;
            }
            for &r in &face.boundary {
                if !self.half_edges[r].alive || self.half_edges[r].face != f {
                    bad.push(format!("face {f} lists stale representative {r}"));
                    continue;
                }
                for x in self.cycle(r) {
                    if let Some(prev) = on_cycle_of.insert(x, r) {
                        bad.push(format!("half-edge {x} reached from representatives {prev} and {r}"));
                    }
                }
            }
        }
        let alive_h = self.half_edges.iter().filter(|x| x.alive).count();
        if on_cycle_of.len() != alive_h {
            bad.push(format!("{} of {alive_h} half-edges lie on a listed cycle", on_cycle_of.len()));
        }
        for (v, slot) in self.vertices.iter().enumerate() {
            match slot.out {
                Some(h) if !slot.alive || !self.half_edges[h].alive || self.origin(h) != v => {
                    bad.push(format!("vertex {v} has bad outgoing half-edge {h}"))
                }
                None if slot.alive && self.half_edges.iter().any(|x| x.alive && x.origin == v) => {
                    bad.push(format!("vertex {v} marked isolated but has edges"))
                }
                _ => {}
            }
        }
        let mut cache: HashMap<(VertexId, VertexId), u32> = HashMap::new();
        for (&k, &c) in &self.adjacency {
            if c > 0 {
                cache.insert(k, c);
            }
        }
        if cache != adj {
            bad.push("adjacency cache out of date".into());
        }
        let v = self.vertices.iter().filter(|s| s.alive).count() as i64;
        let e = (alive_h / 2) as i64;
        let f = self.faces.iter().filter(|x| x.alive).count() as i64;
        let c = self.components() as i64;
        if v - e + f != 1 + c {
            bad.push(format!("Euler relation fails: V={v} E={e} F={f} C={c}"));
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(bad)
        }
    }

    /// Textual dump of every live element.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (h, he) in self.half_edges.iter().enumerate().filter(|(_, x)| x.alive) {
            let _ = writeln!(s, "h{h}: {}->{} next h{} prev h{} face f{}", he.origin, self.dest(h), he.next, he.prev, he.face);
        }
        for f in self.alive_faces() {
            let face = &self.faces[f];
            let walks: Vec<String> = self
                .bounding_walks(f)
                .iter()
                .map(|w| w.iter().map(|&h| self.origin(h).to_string()).collect::<Vec<_>>().join(" "))
                .collect();
            let _ = writeln!(s, "f{f}: valid={} kappa={:?} walks=[{}]", face.valid, face.kappa, walks.join(" | "));
        }
        for v in self.alive_vertices().into_iter().filter(|&v| self.vertices[v].out.is_none()) {
            let _ = writeln!(s, "isolated {v}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_and_tetrahedron_are_consistent() {
        for d in [2, 3] {
            let g = PlaneGraph::init_complete(d);
            g.audit().unwrap();
            assert_eq!(g.alive_edges().len(), d * (d + 1) / 2);
        }
        let g = PlaneGraph::init_complete(2);
        for e in g.alive_edges() {
            let (u, w) = g.endpoints(e);
            assert_eq!(g.edge_kappa(e), Some(3 - u - w));
        }
    }

    #[test]
    fn split_then_chord_then_delete() {
        let mut g = PlaneGraph::init_complete(2);
        let v = g.add_vertex();
        let ne = g.split_edge(0, v);
        g.audit().unwrap();
        assert!(g.adjacent(v, 1) && g.adjacent(0, v) && !g.adjacent(0, 1));
        assert_eq!(g.edge_kappa(ne), Some(2));
        // chord from v to 2 inside the valid face
        let f = g.alive_faces().into_iter().find(|&f| g.face(f).valid).unwrap();
        let walk = g.bounding_walks(f).remove(0);
        let hv = *walk.iter().find(|&&h| g.origin(h) == v).unwrap();
        let h2 = *walk.iter().find(|&&h| g.origin(h) == 2).unwrap();
        let (_, nf) = g.insert_chord(hv, h2, Some(3)).unwrap();
        g.audit().unwrap();
        assert!(g.face(nf).valid);
        assert_eq!(g.alive_faces().len(), 3);
        let removed = g.delete_vertex(1);
        g.audit().unwrap();
        assert!(removed.iter().any(|r| matches!(r, Removal::Merged { .. })));
        assert_eq!(g.alive_faces().len(), 2);
    }

    #[test]
    fn deleting_down_to_isolated_vertices() {
        let mut g = PlaneGraph::init_complete(3);
        for v in [1, 2] {
            g.delete_vertex(v);
            g.audit().unwrap();
        }
        assert_eq!(g.alive_edges().len(), 1);
        g.delete_edge(g.alive_edges()[0]);
        g.audit().unwrap();
        assert_eq!(g.components(), 2);
        assert_eq!(g.alive_faces().len(), 1);
    }

    #[test]
    fn chord_across_faces_is_rejected() {
        let mut g = PlaneGraph::init_complete(3);
        let a = g.faces[0].boundary[0];
        let b = g.faces[1].boundary[0];
        assert!(matches!(g.insert_chord(a, b, None), Err(DcelError::NotOnSameWalk(..))));
    }

    #[test]
    fn parallel_edges_are_removed() {
        let mut g = PlaneGraph::init_complete(2);
        let f = g.alive_faces().into_iter().find(|&f| g.face(f).valid).unwrap();
        let walk = g.bounding_walks(f).remove(0);
        let h0 = *walk.iter().find(|&&h| g.origin(h) == 0).unwrap();
        let h1 = *walk.iter().find(|&&h| g.origin(h) == 1).unwrap();
        g.insert_chord(h0, h1, None).unwrap();
        g.audit().unwrap();
        assert_eq!(g.dedupe_parallel_edges().len(), 1);
        g.audit().unwrap();
        assert_eq!(g.alive_edges().len(), 3);
    }
}
