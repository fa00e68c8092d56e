//! Window-stability study: the computed dimensions must not move across
//! the working range of windows, so any single window in it is trustworthy.

use wittx::algebra::Algebra;
use wittx::cohomology::{h2_dimensions, Window};
use wittx::leibniz::{exact_sequence_crosscheck, hl2_dimension, inv_dimension};
use wittx::morphisms::h1_adjoint_dimension;
use wittx::rat::{Lambda, Rat};

fn lambda_grid() -> Vec<Lambda> {
    vec![
        Lambda::int(0),
        Lambda::int(-1),
        Lambda::int(1),
        Lambda::Finite(Rat::new(5, 7)),
        Lambda::Infinity,
    ]
}

fn series_grid() -> Vec<Algebra> {
    let mut out = Vec::new();
    for l in lambda_grid() {
        out.push(Algebra::series_a(l.clone()));
        out.push(Algebra::series_b(l));
    }
    out
}

#[test]
fn h2_dimensions_are_window_stable() {
    for alg in series_grid() {
        let reference = h2_dimensions(&alg, Window::new(5)).unwrap();
        for n in 6..=10 {
            let dims = h2_dimensions(&alg, Window::new(n)).unwrap();
            assert_eq!(dims, reference, "{} at N = {n}", alg.name());
        }
    }
}

#[test]
fn hl2_and_inv_are_window_stable() {
    for alg in series_grid() {
        let hl2 = hl2_dimension(&alg, Window::new(5)).unwrap();
        let inv = inv_dimension(&alg, Window::new(5)).unwrap();
        for n in [7, 10] {
            assert_eq!(
                hl2_dimension(&alg, Window::new(n)).unwrap(),
                hl2,
                "{} N={n}",
                alg.name()
            );
            assert_eq!(
                inv_dimension(&alg, Window::new(n)).unwrap(),
                inv,
                "{} N={n}",
                alg.name()
            );
        }
    }
}

#[test]
fn h1_dimensions_are_window_stable() {
    for alg in series_grid() {
        let reference = h1_adjoint_dimension(&alg, Window::new(5)).unwrap();
        for n in 6..=10 {
            let dim = h1_adjoint_dimension(&alg, Window::new(n)).unwrap();
            assert_eq!(dim, reference, "{} at N = {n}", alg.name());
        }
    }
}

#[test]
fn crosscheck_holds_across_windows() {
    for alg in [
        Algebra::series_a(Lambda::int(0)),
        Algebra::series_a(Lambda::Infinity),
        Algebra::series_b(Lambda::Finite(Rat::new(5, 7))),
    ] {
        for n in [5, 8] {
            let r = exact_sequence_crosscheck(&alg, Window::new(n)).unwrap();
            assert!(r.ok, "{} at N = {n}: {r:?}", alg.name());
        }
    }
}

#[test]
fn tensor_density_rows_are_window_stable() {
    let grid = [
        (Rat::int(0), Rat::int(0)),
        (Rat::int(0), Rat::int(1)),
        (Rat::int(0), Rat::int(2)),
        (Rat::int(0), Rat::int(-1)),
        (Rat::new(1, 2), Rat::int(0)),
        (Rat::int(3), Rat::int(4)),
    ];
    for (a, b) in grid {
        let alg = Algebra::tensor_density(a, b);
        let h2 = h2_dimensions(&alg, Window::new(5)).unwrap();
        let h1 = h1_adjoint_dimension(&alg, Window::new(5)).unwrap();
        for n in [7, 9] {
            assert_eq!(
                h2_dimensions(&alg, Window::new(n)).unwrap(),
                h2,
                "{} N={n}",
                alg.name()
            );
            assert_eq!(
                h1_adjoint_dimension(&alg, Window::new(n)).unwrap(),
                h1,
                "{} N={n}",
                alg.name()
            );
        }
    }
}
