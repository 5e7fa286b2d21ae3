use avenum::exec::Execution;
use avenum::generators::{standard, Standard};
use avenum::numerics::ratio;
use avenum::run::{Algorithm, RunOptions};
use avenum::suite::*;

#[test]
fn simplex_keeps_its_corners() {
    for d in [2, 3] {
        let prep = prepare(&standard(Standard::Simplex, d).unwrap()).unwrap();
        for eps in eps_decades() {
            for alg in [Algorithm::Ga, Algorithm::Addm] {
                let r = run_cell(&prep, alg, &eps, Backend::Rational, &RunOptions::default(), true);
                assert_eq!(r.n_vertices(), d + 1, "{alg} d={d}");
                assert_eq!(r.verified(), Some(true));
            }
        }
    }
}

#[test]
fn batches_are_deterministic_and_nested() {
    let fixtures = corpus(3).unwrap();
    let preps: Vec<Prepared> = fixtures.iter().take(8).map(|f| prepare(f).unwrap()).collect();
    let cs = cells(preps.len(), &[ratio(1, 10)], &[Algorithm::Ga, Algorithm::Addm]);
    let opts = RunOptions::default();
    let a = run_cells(&preps, &cs, Backend::Float, &opts, false, Execution::Sequential);
    let b = run_cells(&preps, &cs, Backend::Float, &opts, false, Execution::Parallel);
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.keys, y.keys);
        assert_eq!(x.points, y.points);
    }
    for pair in a.chunks(2) {
        assert!(pair[0].keys.iter().all(|k| pair[1].keys.binary_search(k).is_ok()), "{}", pair[0].fixture);
    }
}

#[test]
fn csv_rows_have_every_column() {
    let prep = prepare(&standard(Standard::Cube, 2).unwrap()).unwrap();
    let r = run_cell(&prep, Algorithm::Ga, &ratio(1, 100), Backend::Rational, &RunOptions::default(), true);
    let cols = CellResult::csv_header().split(',').count();
    assert_eq!(r.csv_row().split(',').count(), cols);
    assert!(r.csv_row().starts_with("cube2,ga,1/100,rational,4,"));
    assert!(r.csv_row().ends_with(",true"));
}

#[test]
fn script_cases_stay_in_range() {
    for c in script_cases(200, 12) {
        assert!((2..=3).contains(&c.d));
        assert!(c.m >= c.d + 2 && c.m <= 12);
    }
}

#[test]
fn incidence_size_limit_trips() {
    let prep = prepare(&avenum::generators::zonotope3(&avenum::generators::grid_generators()).unwrap()).unwrap();
    let opts = RunOptions { max_vertices: Some(50), ..Default::default() };
    let r = run_cell(&prep, Algorithm::Addm, &ratio(1, 1), Backend::Float, &opts, false);
    assert!(matches!(r.error, Some(avenum::error::AlgError::TooLarge { .. })), "{:?}", r.error);
    let ga = run_cell(&prep, Algorithm::Ga, &ratio(1, 1), Backend::Float, &opts, false);
    assert!(ga.error.is_none());
}
