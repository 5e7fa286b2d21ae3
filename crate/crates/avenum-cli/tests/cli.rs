use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn avenum(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_avenum")).args(args).current_dir(dir).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn with_fixture(spec: &str) -> (TempDir, PathBuf) {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("p.ine");
    let o = avenum(&["generate", spec, "-o", path.to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    (dir, path)
}

const PENTAGON: &str = "* pentagon\nH-representation\nbegin\n5 3 rational\n1 -1 0\n1 -1/3 -1\n1 1 -1\n1 1 1\n1 -1/3 1\nend\n";

#[test]
fn run_and_verify_cube() {
    let (dir, _) = with_fixture("cube3");
    for alg in ["ga", "addm"] {
        let o = avenum(&["run", "p.ine", "--alg", alg, "--eps", "1e-3", "--verify", "-o", "v.ext"], dir.path());
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let report = String::from_utf8_lossy(&o.stderr);
        let fields: Vec<&str> = report.split_whitespace().collect();
        assert_eq!(fields.len(), 10);
        assert_eq!(&fields[..6], &["p", alg, "1/1000", "rational", "true", "true"]);
        assert_eq!(code(&avenum(&["verify", "p.ine", "v.ext", "--eps", "1/1000"], dir.path())), 0);
    }
}

#[test]
fn verify_reports_a_missing_corner() {
    let (dir, _) = with_fixture("cube3");
    let corners = [(1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1), (-1, 1, 1), (-1, 1, -1), (-1, -1, 1)];
    let mut ext = format!("V-representation\nbegin\n{} 4 rational\n", corners.len());
    for (a, b, c) in corners {
        ext.push_str(&format!("1 {a} {b} {c}\n"));
    }
    ext.push_str("end\n");
    std::fs::write(dir.path().join("v.ext"), ext).unwrap();
    let o = avenum(&["verify", "p.ine", "v.ext", "--eps", "0.01"], dir.path());
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("inner_ok false outer_ok true"));
    assert!(stdout(&o).contains("vertex of P outside conv V: (-1.000000, -1.000000, -1.000000)"));
}

#[test]
fn exit_codes() {
    let (dir, _) = with_fixture("cube3");
    assert_eq!(code(&avenum(&["run", "p.ine", "--eps", "0"], dir.path())), 2);
    assert_eq!(code(&avenum(&["run", "p.ine"], dir.path())), 2);
    assert_eq!(code(&avenum(&["export", "p.ine", "--alg", "addm", "--eps", "0.1", "--format", "off"], dir.path())), 2);
    assert_eq!(code(&avenum(&["export", "p.ine", "--eps", "0.1", "--format", "svg"], dir.path())), 2);
    std::fs::write(dir.path().join("bad.ine"), "H-representation\nbegin\n1 3 rational\n1 0.5 0\nend\n").unwrap();
    assert_eq!(code(&avenum(&["run", "bad.ine", "--eps", "0.1"], dir.path())), 3);
    assert_eq!(code(&avenum(&["run", "missing.ine", "--eps", "0.1"], dir.path())), 3);
    std::fs::write(dir.path().join("open.ine"), "H-representation\nbegin\n1 3 rational\n1 -1 0\nend\n").unwrap();
    assert_eq!(code(&avenum(&["run", "open.ine", "--eps", "0.1"], dir.path())), 3);
}

#[test]
fn output_is_deterministic() {
    let (dir, _) = with_fixture("ball3:25:4");
    for backend in ["rational", "float"] {
        let a = avenum(&["run", "p.ine", "--eps", "0.01", "--backend", backend], dir.path());
        let b = avenum(&["run", "p.ine", "--eps", "0.01", "--backend", backend], dir.path());
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn float_run_with_audit_and_checks() {
    let (dir, _) = with_fixture("ball3:20:2");
    let o = avenum(&["run", "p.ine", "--eps", "0.01", "--backend", "float", "--audit", "--verify", "--checks"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains(" float true true "));
}

#[test]
fn off_faces_close_up() {
    let (dir, _) = with_fixture("cube3");
    for tri in [false, true] {
        let mut args = vec!["export", "p.ine", "--eps", "0.1", "--format", "off"];
        if tri {
            args.push("--triangulate");
        }
        let o = avenum(&args, dir.path());
        assert_eq!(code(&o), 0);
        let text = stdout(&o);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("OFF"));
        let counts: Vec<usize> = lines.next().unwrap().split_whitespace().map(|x| x.parse().unwrap()).collect();
        let (nv, nf) = (counts[0], counts[1]);
        assert!(nv >= 8);
        for _ in 0..nv {
            assert_eq!(lines.next().unwrap().split_whitespace().count(), 3);
        }
        let mut sides: HashMap<(usize, usize), usize> = HashMap::new();
        for _ in 0..nf {
            let f: Vec<usize> = lines.next().unwrap().split_whitespace().map(|x| x.parse().unwrap()).collect();
            assert_eq!(f[0], f.len() - 1);
            let vs = &f[1..];
            if tri {
                assert_eq!(vs.len(), 3);
            }
            for k in 0..vs.len() {
                let (a, b) = (vs[k], vs[(k + 1) % vs.len()]);
                assert!(a < nv && b < nv);
                *sides.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
        assert!(lines.next().is_none());
        // a closed surface uses every edge from both sides
        assert!(sides.values().all(|&c| c == 2));
        assert_eq!(nv + nf, sides.len() + 2);
    }
}

#[test]
fn pentagon_svg_has_one_outline() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("pent.ine"), PENTAGON).unwrap();
    let o = avenum(&["export", "pent.ine", "--eps", "0.01", "--format", "svg"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert!(s.starts_with("<svg") && s.trim_end().ends_with("</svg>"));
    assert_eq!(s.matches("<polygon").count(), 1);
    assert_eq!(s.matches("<circle").count(), 5);
    assert_eq!(s.matches("<line").count(), 5);
}

#[test]
fn csv_export_for_addm() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("pent.ine"), PENTAGON).unwrap();
    let o = avenum(&["export", "pent.ine", "--alg", "addm", "--eps", "0.01", "--format", "csv"], dir.path());
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert_eq!(s.lines().next(), Some("id,x0,x1,x0_exact,x1_exact"));
    assert_eq!(s.lines().count(), 6);
}

#[test]
fn bench_rows() {
    let dir = TempDir::new().unwrap();
    let o = avenum(&["bench", "--fixtures", "simplex3,zonotope:7", "--eps", "1,0.1,0.01", "--verify", "--sequential"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    let rows: Vec<Vec<&str>> = s.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 12);
    let mut counts: HashMap<(&str, &str), [usize; 2]> = HashMap::new();
    for r in &rows {
        assert_eq!(r[6], "true");
        let n: usize = r[4].parse().unwrap();
        if r[0] == "simplex3" {
            assert_eq!(n, 4);
        }
        counts.entry((r[0], r[2])).or_default()[(r[1] == "addm") as usize] = n;
    }
    assert!(counts.values().all(|[ga, addm]| ga <= addm));
}

#[test]
fn generated_files_parse_back() {
    for spec in ["simplex2", "cross3", "zonotope:4", "example", "ball2:9:1"] {
        let (_dir, path) = with_fixture(spec);
        let h = avenum::io::parse_ine(&std::fs::read_to_string(path).unwrap()).unwrap();
        assert!(h.origin_inside(), "{spec}");
    }
}
