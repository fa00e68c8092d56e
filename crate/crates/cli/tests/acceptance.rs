//! Acceptance suite: one test per criterion, all exact (zero tolerance),
//! each printing a `criterion N ... PASS` line as it completes.

use std::process::Command;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wittx::algebra::{check_f_equivariance, Algebra};
use wittx::cocycle::NamedCocycle;
use wittx::cohomology::{h2_dimensions, is_cocycle, H2Dims, Window};
use wittx::element::Element;
use wittx::extension::{self, verify_extension, ExtensionDefect};
use wittx::leibniz::{exact_sequence_crosscheck, hl2_dimension, inv_dimension};
use wittx::linsolve::SubspaceBasis;
use wittx::morphisms::{
    apply_aut, check_aut, compose_auts, derivation_constraints, derivation_window_vector,
    h1_adjoint_dimension, inner_derivation_space, inner_identity_check, sample_aut_spec, DerGen,
    DerSpec, ETA_KIND,
};
use wittx::rat::{Lambda, Rat};
use wittx::suites;

fn lambda_grid() -> Vec<Lambda> {
    vec![
        Lambda::int(0),
        Lambda::int(-1),
        Lambda::int(1),
        Lambda::Finite(Rat::new(5, 7)),
        Lambda::Infinity,
    ]
}

fn ab_grid() -> Vec<(Rat, Rat)> {
    vec![
        (Rat::int(0), Rat::int(0)),
        (Rat::int(0), Rat::int(1)),
        (Rat::int(0), Rat::int(2)),
        (Rat::int(0), Rat::int(-1)),
        (Rat::new(1, 2), Rat::int(0)),
        (Rat::int(3), Rat::int(4)),
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

fn all_grid() -> Vec<Algebra> {
    let mut out: Vec<Algebra> = ab_grid()
        .into_iter()
        .map(|(a, b)| Algebra::tensor_density(a, b))
        .collect();
    out.extend(series_grid());
    out
}

#[test]
fn c01_jacobi_identity_over_window() {
    let w = Window::new(8);
    for alg in all_grid() {
        let check = suites::jacobi_check(&alg, w, false).unwrap();
        assert!(check.pass, "{}: {:?}", alg.name(), check.counterexample);
    }
    println!("criterion 1 (Jacobi identity, all basis triples |n| <= 8, full grid): PASS");
}

#[test]
fn c02_h2_dimensions_with_split_and_stability() {
    for lambda in lambda_grid() {
        let wa = Algebra::series_a(lambda.clone());
        let expected_a = if lambda.is_zero() {
            H2Dims {
                vir: 1,
                ab: 0,
                mix: 2,
                total: 3,
            }
        } else {
            H2Dims {
                vir: 1,
                ab: 0,
                mix: 1,
                total: 2,
            }
        };
        let wb = Algebra::series_b(lambda.clone());
        let expected_b = H2Dims {
            vir: 1,
            ab: 1,
            mix: 1,
            total: 3,
        };
        for n in 5..=10 {
            let w = Window::new(n);
            assert_eq!(
                h2_dimensions(&wa, w).unwrap(),
                expected_a,
                "{} N={n}",
                wa.name()
            );
            assert_eq!(
                h2_dimensions(&wb, w).unwrap(),
                expected_b,
                "{} N={n}",
                wb.name()
            );
        }
    }
    println!("criterion 2 (H2 dimensions and component split, stable for N in [5,10]): PASS");
}

#[test]
fn c03_named_cocycle_soundness() {
    let w = Window::new(10);
    assert!(
        is_cocycle(&Algebra::witt(), &NamedCocycle::OmegaVir.into(), w)
            .unwrap()
            .is_empty()
    );
    for lambda in lambda_grid() {
        let wa = Algebra::series_a(lambda.clone());
        let wb = Algebra::series_b(lambda.clone());
        for (alg, form) in [
            (&wa, NamedCocycle::OmegaVir),
            (&wa, NamedCocycle::OmegaMixA(lambda.clone())),
            (&wb, NamedCocycle::OmegaVir),
            (&wb, NamedCocycle::OmegaAbB),
            (&wb, NamedCocycle::OmegaMixB(lambda.clone())),
        ] {
            let defects = is_cocycle(alg, &form.clone().into(), w).unwrap();
            assert!(defects.is_empty(), "{:?} on {}", form, alg.name());
        }
    }
    // the extra degree-linear mixing cocycle exists exactly at lambda = 0
    let wa0 = Algebra::series_a(Lambda::int(0));
    assert!(is_cocycle(&wa0, &NamedCocycle::Omega0A.into(), w)
        .unwrap()
        .is_empty());
    // and every named form on its home algebra, grid-wide
    for alg in series_grid() {
        for (tag, form) in suites::named_cocycles_for(&alg) {
            let defects = is_cocycle(&alg, &form.into(), w).unwrap();
            assert!(defects.is_empty(), "{tag} on {}", alg.name());
        }
    }
    println!("criterion 3 (named cocycles pass the cyclic identity at N = 10): PASS");
}

#[test]
fn c04_leibniz_dimensions_and_exact_sequence() {
    let w = Window::new(8);
    for lambda in lambda_grid() {
        let wa = Algebra::series_a(lambda.clone());
        let expected = if lambda.is_zero() { 4 } else { 3 };
        assert_eq!(hl2_dimension(&wa, w).unwrap(), expected, "{}", wa.name());
        assert_eq!(inv_dimension(&wa, w).unwrap(), 1, "{}", wa.name());

        let wb = Algebra::series_b(lambda.clone());
        assert_eq!(hl2_dimension(&wb, w).unwrap(), 3, "{}", wb.name());
        assert_eq!(inv_dimension(&wb, w).unwrap(), 0, "{}", wb.name());
    }
    // the corrected tensor-density value: one more Leibniz class than H2
    let w01 = Algebra::tensor_density(Rat::int(0), Rat::int(1));
    assert_eq!(hl2_dimension(&w01, w).unwrap(), 4);
    for alg in all_grid() {
        let r = exact_sequence_crosscheck(&alg, w).unwrap();
        assert!(r.ok, "{}: {r:?}", alg.name());
    }
    println!("criterion 4 (HL2 and Inv dimensions, exact-sequence cross-check on the grid): PASS");
}

#[test]
fn c05_automorphism_group_law() {
    let w = Window::new(10);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for alg in series_grid() {
        let basis = alg.basis_window(w.n());
        for tuple in 0..50 {
            let s1 = sample_aut_spec(&alg, &mut rng);
            let s2 = sample_aut_spec(&alg, &mut rng);
            let composed = compose_auts(&s1, &s2, &alg).unwrap();
            for b in &basis {
                let x = Element::basis(b.clone());
                let direct = apply_aut(&s1, &alg, &apply_aut(&s2, &alg, &x).unwrap()).unwrap();
                assert_eq!(
                    apply_aut(&composed, &alg, &x).unwrap(),
                    direct,
                    "{} tuple {tuple}",
                    alg.name()
                );
            }
        }
        let sample = sample_aut_spec(&alg, &mut rng);
        assert!(
            check_aut(&sample, &alg, w).unwrap().is_empty(),
            "{}",
            alg.name()
        );
    }
    let samples = [
        Rat::zero(),
        Rat::one(),
        Rat::int(3),
        Rat::int(-2),
        Rat::new(5, 7),
    ];
    for lambda in [Lambda::int(2), Lambda::Infinity] {
        assert!(inner_identity_check(&lambda, Window::new(8), &samples).unwrap());
    }
    println!("criterion 5 (group law vs pointwise composition, 50 tuples, |n| <= 10): PASS");
}

#[test]
fn c06_outer_derivations() {
    let w = Window::new(8);
    for lambda in lambda_grid() {
        let wa = Algebra::series_a(lambda.clone());
        assert_eq!(h1_adjoint_dimension(&wa, w).unwrap(), 2, "{}", wa.name());
        let wb = Algebra::series_b(lambda.clone());
        let expected = if lambda.is_zero() { 3 } else { 2 };
        assert_eq!(
            h1_adjoint_dimension(&wb, w).unwrap(),
            expected,
            "{}",
            wb.name()
        );

        for alg in [wa, wb] {
            let kernel = derivation_constraints(&alg, w).unwrap().kernel();
            for vec in kernel.vectors() {
                assert!(
                    vec.keys().all(|v| v.kind != ETA_KIND),
                    "{}: eta component survives",
                    alg.name()
                );
            }
            let inner = inner_derivation_space(&alg, w).unwrap();
            let named: Vec<DerGen> = match alg.base() {
                Algebra::SeriesA { lambda } => {
                    vec![
                        DerGen::DAb,
                        if lambda.is_zero() {
                            DerGen::PartialA
                        } else {
                            DerGen::DeltaA
                        },
                    ]
                }
                Algebra::SeriesB { lambda } => {
                    let mut named = vec![DerGen::DAb, DerGen::DB];
                    if lambda.is_zero() {
                        named.push(DerGen::PartialB0);
                    }
                    named
                }
                _ => unreachable!(),
            };
            let mut gens = inner.vectors().to_vec();
            let inner_dim = SubspaceBasis::from_vectors(kernel.vars().clone(), gens.clone()).dim();
            for gen in named {
                let v = derivation_window_vector(&DerSpec::single(gen), &alg, w).unwrap();
                assert!(
                    kernel.in_span(&v),
                    "{}: named direction outside kernel",
                    alg.name()
                );
                gens.push(v);
            }
            let span = SubspaceBasis::from_vectors(kernel.vars().clone(), gens);
            assert_eq!(
                span.dim(),
                kernel.dim(),
                "{}: named + inner span",
                alg.name()
            );
            assert_eq!(
                (span.dim() - inner_dim) as i64,
                h1_adjoint_dimension(&alg, w).unwrap(),
                "{}: named generators independent modulo inner",
                alg.name()
            );
        }
    }
    println!("criterion 6 (outer derivation dimensions, eta vanishing, generator span): PASS");
}

#[test]
fn c07_central_extensions() {
    let w = Window::new(8);
    assert!(verify_extension(&extension::virasoro(), w)
        .unwrap()
        .is_empty());
    for lambda in lambda_grid() {
        let va = extension::vir_a(lambda.clone());
        assert!(
            verify_extension(&va, w).unwrap().is_empty(),
            "{}",
            va.name()
        );
        let vb = extension::vir_b(lambda.clone());
        assert!(
            verify_extension(&vb, w).unwrap().is_empty(),
            "{}",
            vb.name()
        );
    }
    let control = suites::extension_negative_control(w).unwrap();
    assert!(
        control.pass,
        "non-cocycle extension must fail the Jacobi sweep"
    );
    // and the defect really is a Jacobi defect, not a centrality failure
    let values = w.indices().map(|k| (k, Rat::int(k * k * k))).collect();
    let bad = wittx::CocycleForm::Custom {
        component: wittx::Component::Mix,
        values,
        window: w.n(),
    };
    let alg = extension::build_central_extension(
        Algebra::series_a(Lambda::int(1)),
        vec![wittx::CentralCharge {
            form: bad,
            name: "bad".into(),
            coeff: Rat::one(),
        }],
    )
    .unwrap();
    let defects = verify_extension(&alg, w).unwrap();
    assert!(defects
        .iter()
        .any(|d| matches!(d, ExtensionDefect::Jacobi { .. })));
    println!("criterion 7 (named extensions verify; non-cocycle control fails): PASS");
}

#[test]
fn c08_table_reproduction() {
    let out = Command::new(env!("CARGO_BIN_EXE_wittx"))
        .args(["tables", "--format", "json"])
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "tables exited {:?}",
        out.status.code()
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["all_match"], serde_json::Value::Bool(true));

    let expect = [
        ("a=0, b=0", [3, 3, 3]),
        ("a=1/2, b=0", [2, 2, 1]),
        ("a=0, b=-1", [2, 2, 1]),
        ("a=0, b=2", [1, 2, 2]),
        ("a=3, b=4", [1, 1, 1]),
    ];
    for (params, [h2, hl2, h1]) in expect {
        let row = report["rows"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["parameters"] == params)
            .unwrap_or_else(|| panic!("missing row {params}"));
        assert_eq!(row["h2"], h2, "{params}");
        assert_eq!(row["hl2"], hl2, "{params}");
        assert_eq!(row["h1"], h1, "{params}");
    }
    println!("criterion 8 (dimension table matches the embedded expected values): PASS");
}

#[test]
fn c09_module_homomorphism() {
    for lambda in [Lambda::int(0), Lambda::int(1), Lambda::Infinity] {
        let defects = check_f_equivariance(&lambda, 8);
        assert!(
            defects.is_empty(),
            "lambda = {lambda}: {:?}",
            defects.first()
        );
    }
    println!("criterion 9 (index-scaling module homomorphism is equivariant at N = 8): PASS");
}

#[test]
fn c10_verify_is_deterministic() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_wittx"))
            .args(["verify", "--seed", "7", "--window", "6"])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "reports differ between runs");
    println!("criterion 10 (byte-identical verification reports for a fixed seed): PASS");
}
