use recipsym::poly::{parse_poly, Polynomial};
use recipsym::rational::{int, ratio, Rational};
use recipsym::symfunc::ColumnStream;
use recipsym::verify::{
    certify_noninteger, explore_conjecture, prior_results_sweep, run_sweep, theorem_family,
    theorem_sweep, PriorKind, PriorParams, VerifyError,
};

fn p(s: &str) -> Polynomial {
    parse_poly(s).unwrap()
}

fn keys(hits: &[recipsym::verify::Hit]) -> Vec<(usize, u64, Rational)> {
    hits.iter().map(|h| (h.k, h.n, h.value.clone())).collect()
}

#[test]
fn sweep_is_independent_of_worker_count() {
    let fam = theorem_family(3, 2, 20);
    let one = run_sweep(&fam, Some(1)).unwrap();
    let four = run_sweep(&fam, Some(4)).unwrap();
    let auto = run_sweep(&fam, None).unwrap();
    // wall_time is the only field allowed to differ, and it is not serialized
    let json = |r| serde_json::to_string(r).unwrap();
    assert_eq!(json(&one), json(&four));
    assert_eq!(json(&one), json(&auto));
    assert_eq!(one.hits, four.hits);
}

#[test]
fn theorem_sweep_hits_only_monomials() {
    let r = theorem_sweep(3, 2, 25, None).unwrap();
    assert!(r.unexpected.is_empty());
    let polys: Vec<String> = r.hits.iter().map(|h| h.poly.render()).collect();
    assert_eq!(polys, ["x^2", "x^3"]);
    assert!(r.hits.iter().all(|h| h.k == 1 && h.n == 1 && h.value == int(1)));
}

#[test]
fn certificates_agree_with_table() {
    // every non-hit certifies, every hit is the exceptional case
    let fam = theorem_family(3, 2, 12);
    let r = run_sweep(&fam, None).unwrap();
    use recipsym::verify::SweepFamily;
    for f in fam.polynomials() {
        let mut stream = ColumnStream::new(&f);
        for n in 1..=12u64 {
            let col = stream.advance().unwrap().clone();
            for k in 1..=n as usize {
                let hit = r.hits.iter().any(|h| h.poly == f && h.k == k && h.n == n);
                match certify_noninteger(&f, k, n) {
                    Ok(cert) => {
                        assert!(!hit, "{f} k={k} n={n} certified but integral");
                        assert_eq!(cert.value, col.sigma(k));
                        assert_eq!(cert.check(), Ok(()));
                    }
                    Err(VerifyError::ExceptionalCase { value }) => {
                        assert!(hit, "{f} k={k} n={n}");
                        assert_eq!(value, int(1));
                    }
                    Err(e) => panic!("{f} k={k} n={n}: {e}"),
                }
            }
        }
    }
}

#[test]
fn prior_result_families() {
    let harmonic = prior_results_sweep(
        PriorKind::Harmonic,
        PriorParams {
            n_max: 200,
            ..Default::default()
        },
        None,
    )
    .unwrap();
    assert!(harmonic.hits.is_empty());
    assert_eq!(harmonic.instances_checked, 199);

    let chen_tang = prior_results_sweep(
        PriorKind::ChenTang,
        PriorParams {
            n_max: 60,
            ..Default::default()
        },
        None,
    )
    .unwrap();
    assert_eq!(
        keys(&chen_tang.hits),
        [(1, 1, int(1)), (2, 3, int(1))]
    );
    assert!(chen_tang.unexpected.is_empty());

    let wang_hong = prior_results_sweep(
        PriorKind::WangHong,
        PriorParams {
            n_max: 30,
            a_max: 4,
            b_max: 4,
            n_min: None,
        },
        Some(2),
    )
    .unwrap();
    assert!(wang_hong.hits.is_empty());
}

#[test]
fn explore_snapshots() {
    let r = explore_conjecture(&p("x^2-3"), 100).unwrap();
    assert!(r.hits.is_empty());
    assert_eq!(r.candidate_n, 1);
    assert_eq!(r.note, "verified up to n_max = 100");

    let r = explore_conjecture(&p("x^2"), 50).unwrap();
    assert_eq!(keys(&r.hits), [(1, 1, int(1))]);
    assert_eq!(r.candidate_n, 2);

    let r = explore_conjecture(&p("2x-3"), 40).unwrap();
    assert_eq!(
        keys(&r.hits),
        [(1, 1, int(-1)), (1, 2, int(0)), (2, 2, int(-1)), (2, 3, int(-1))]
    );
    assert_eq!(r.candidate_n, 4);

    let r = explore_conjecture(&p("2x-5"), 40).unwrap();
    assert_eq!(
        keys(&r.hits),
        [(2, 3, int(-1)), (1, 4, int(0)), (3, 4, int(0))]
    );
    assert_eq!(r.candidate_n, 5);

    assert_eq!(
        explore_conjecture(&p("x^2-4"), 10),
        Err(VerifyError::HypothesisViolated(2))
    );
}

#[test]
fn explore_values_are_exact() {
    let r = explore_conjecture(&p("x^2-3"), 2).unwrap();
    assert_eq!(r.instances_checked, 3);
    let col = recipsym::sigma_column(&p("x^2-3"), 2).unwrap();
    assert_eq!(col.sigma(1), ratio(1, 2));
    assert_eq!(col.sigma(2), ratio(-1, 2));
}
