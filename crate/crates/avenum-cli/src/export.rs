//! OFF, SVG and CSV writers.

use std::collections::HashMap;
use std::fmt::Write as _;

use avenum::ga::GaResult;
use avenum::hrep::AffineTransform;
use avenum::numerics::{rational_to_f64, BigRational, Scalar};

/// Plane graph of a finished run in the input frame.
pub struct Geometry {
    pub points: Vec<Vec<f64>>,
    /// Vertex-index cycles, with the validity of their face.
    pub walks: Vec<(bool, Vec<usize>)>,
    pub edges: Vec<(usize, usize)>,
}

pub fn geometry<S: Scalar>(res: &GaResult<S>, frame: &AffineTransform<BigRational>) -> Geometry {
    let g = &res.graph;
    let mut index = HashMap::new();
    let mut points = Vec::new();
    for &v in &res.vertices {
        let c: Vec<BigRational> = res.log.coord(v).expect("geometric run").iter().map(Scalar::to_rational).collect();
        index.insert(v, points.len());
        points.push(frame.to_original(&c).iter().map(rational_to_f64).collect());
    }
    let mut walks = Vec::new();
    for f in g.alive_faces() {
        for w in g.bounding_walks(f) {
            walks.push((g.face(f).valid, w.iter().map(|&h| index[&g.origin(h)]).collect()));
        }
    }
    let edges = res.edges().iter().map(|(u, w)| (index[u], index[w])).collect();
    Geometry { points, walks, edges }
}

/// One polygon per valid bounding walk, or a fan of triangles per walk.
pub fn off(geo: &Geometry, triangulate: bool) -> String {
    let mut polys: Vec<Vec<usize>> = Vec::new();
    for (valid, w) in &geo.walks {
        if !valid {
            continue;
        }
        if triangulate && w.len() > 3 {
            polys.extend((1..w.len() - 1).map(|k| vec![w[0], w[k], w[k + 1]]));
        } else {
            polys.push(w.clone());
        }
    }
    let mut s = format!("OFF\n{} {} {}\n", geo.points.len(), polys.len(), geo.edges.len());
    for p in &geo.points {
        let _ = writeln!(s, "{}", p.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(" "));
    }
    for p in &polys {
        let _ = writeln!(s, "{} {}", p.len(), p.iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
    }
    s
}

/// The plane graph drawn over its invalid face.
pub fn svg(geo: &Geometry) -> String {
    const SIZE: f64 = 480.0;
    const PAD: f64 = 16.0;
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in &geo.points {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-12);
    let at = |p: &[f64]| ((p[0] - lo[0]) / span * (SIZE - 2.0 * PAD) + PAD, SIZE - PAD - (p[1] - lo[1]) / span * (SIZE - 2.0 * PAD));
    let path = |w: &[usize]| w.iter().map(|&i| { let (x, y) = at(&geo.points[i]); format!("{x:.3},{y:.3}") }).collect::<Vec<_>>().join(" ");
    let mut s = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n");
    let _ = writeln!(s, "<rect width=\"{SIZE}\" height=\"{SIZE}\" fill=\"#eeeeee\"/>");
    for (valid, w) in &geo.walks {
        if *valid {
            let _ = writeln!(s, "<polygon points=\"{}\" fill=\"#ffffff\" stroke=\"none\"/>", path(w));
        }
    }
    for &(u, w) in &geo.edges {
        let ((x1, y1), (x2, y2)) = (at(&geo.points[u]), at(&geo.points[w]));
        let _ = writeln!(s, "<line x1=\"{x1:.3}\" y1=\"{y1:.3}\" x2=\"{x2:.3}\" y2=\"{y2:.3}\" stroke=\"#202020\"/>");
    }
    for p in &geo.points {
        let (x, y) = at(p);
        let _ = writeln!(s, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"2.5\" fill=\"#c03030\"/>");
    }
    s.push_str("</svg>\n");
    s
}

/// Points as exact rationals and decimals.
pub fn csv(points: &[Vec<BigRational>]) -> String {
    let d = points.first().map_or(0, Vec::len);
    let mut s = String::from("id");
    for k in 0..d {
        let _ = write!(s, ",x{k}");
    }
    for k in 0..d {
        let _ = write!(s, ",x{k}_exact");
    }
    s.push('\n');
    for (i, p) in points.iter().enumerate() {
        let _ = write!(s, "{i}");
        for x in p {
            let _ = write!(s, ",{}", rational_to_f64(x));
        }
        for x in p {
            let _ = write!(s, ",{}", avenum::numerics::format_rational(x));
        }
        s.push('\n');
    }
    s
}
