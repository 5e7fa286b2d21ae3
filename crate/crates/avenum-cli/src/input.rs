//! Loading polytopes from files or fixture specs.

use std::path::Path;

use avenum::generators::{example_a2, grid_generators, polar_minkowski_seq, standard, zonotope3, Fixture, Standard};
use avenum::hrep::{canonical_form, AffineTransform, HPolytope};
use avenum::io::{parse_ext, parse_ine, HFile};
use avenum::numerics::BigRational;
use avenum::suite::corpus;

use crate::Failure;

/// A canonical polytope with the map back to the file's frame.
pub struct Loaded {
    pub name: String,
    pub poly: HPolytope<BigRational>,
    pub frame: AffineTransform<BigRational>,
}

/// Rows with positive right-hand sides are only rescaled, so the file's own
/// origin is kept as the centre; otherwise an interior point is computed.
pub fn canonicalise(name: String, h: &HFile) -> Result<Loaded, Failure> {
    let (poly, frame) = if h.origin_inside() {
        let rows = h.a.iter().zip(&h.b).map(|(r, b)| r.iter().map(|x| x / b).collect()).collect();
        let poly = HPolytope::new(rows).map_err(|e| Failure::Input(e.to_string()))?;
        avenum::hrep::check_bounded(&poly).map_err(|e| Failure::Input(e.to_string()))?;
        let frame = AffineTransform { translation: vec![num_zero(); poly.d()], row_scale: h.b.clone() };
        (poly, frame)
    } else {
        canonical_form(&h.a, &h.b).map_err(|e| Failure::Input(e.to_string()))?
    };
    Ok(Loaded { name, poly, frame })
}

fn num_zero() -> BigRational {
    BigRational::from_integer(0.into())
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| "input".into(), |s| s.to_string_lossy().into_owned())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn load_ine(path: &Path) -> Result<Loaded, Failure> {
    let h = parse_ine(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    canonicalise(stem(path), &h)
}

pub fn load_ext(path: &Path) -> Result<Vec<Vec<BigRational>>, Failure> {
    Ok(parse_ext(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?.points)
}

fn fixture_input(f: Fixture) -> Loaded {
    let d = f.poly.d();
    let m = f.poly.m();
    Loaded { name: f.name, poly: f.poly, frame: AffineTransform::identity(d, m) }
}

fn num(part: Option<&str>, what: &str, default: usize) -> Result<usize, Failure> {
    match part {
        None => Ok(default),
        Some(s) => s.parse().map_err(|_| Failure::Usage(format!("bad {what} `{s}`"))),
    }
}

/// Fixture specs: `simplex2`, `cube3`, `cross3`, `ball3:M:SEED`,
/// `zonotope:K`, `pm:K`, `example`, `corpus:N`, or a path to an `.ine` file.
pub fn resolve(spec: &str) -> Result<Vec<Loaded>, Failure> {
    let gen = |r: Result<Fixture, avenum::generators::GenError>| r.map(fixture_input).map_err(|e| Failure::Usage(e.to_string()));
    let mut parts = spec.split(':');
    let head = parts.next().unwrap_or_default();
    let dim = |s: &str, prefix: &str| s.strip_prefix(prefix).and_then(|d| d.parse::<usize>().ok());
    if let Some(d) = dim(head, "simplex") {
        return Ok(vec![gen(standard(Standard::Simplex, d))?]);
    }
    if let Some(d) = dim(head, "cube") {
        return Ok(vec![gen(standard(Standard::Cube, d))?]);
    }
    if let Some(d) = dim(head, "cross") {
        return Ok(vec![gen(standard(Standard::Crosspolytope, d))?]);
    }
    if let Some(d) = dim(head, "ball") {
        let m = num(parts.next(), "row count", 20)?;
        let seed = num(parts.next(), "seed", 1)? as u64;
        return Ok(vec![gen(standard(Standard::BallTangent { m, seed }, d))?]);
    }
    match head {
        "zonotope" => {
            let k = num(parts.next(), "generator count", 13)?;
            let g = grid_generators();
            if !(3..=g.len()).contains(&k) {
                return Err(Failure::Usage(format!("zonotope needs 3..={} generators", g.len())));
            }
            Ok(vec![gen(zonotope3(&g[g.len() - k..]))?])
        }
        "pm" => {
            let k = num(parts.next(), "depth", 1)?;
            if k > 3 {
                return Err(Failure::Usage("sequence depth is at most 3".into()));
            }
            let seq = polar_minkowski_seq(k).map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(vec![fixture_input(seq.into_iter().last().expect("at least the simplex"))])
        }
        "example" => {
            let ex = example_a2();
            let d = ex.p.d();
            let m = ex.p.m();
            Ok(vec![Loaded { name: "example".into(), poly: ex.p, frame: AffineTransform::identity(d, m) }])
        }
        "corpus" => {
            let n = num(parts.next(), "count", 40)?;
            Ok(corpus(n).map_err(|e| Failure::Usage(e.to_string()))?.into_iter().map(fixture_input).collect())
        }
        _ if Path::new(spec).exists() => Ok(vec![load_ine(Path::new(spec))?]),
        _ => Err(Failure::Usage(format!("unknown fixture `{spec}`"))),
    }
}
