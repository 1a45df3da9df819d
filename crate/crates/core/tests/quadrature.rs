use residuum::quadrature::{
    adaptive, closed_form_exact, closed_form_integral, half_line_integral, numeric_coefficients,
    validate_coffe_numeric, FacetCheck, QuadratureOptions,
};
use residuum::{ExpVec, MonomialSeq, MultiIndex, Weight};

fn seq(rows: &[&[u64]]) -> MonomialSeq {
    MonomialSeq::from_rows(rows).unwrap()
}

fn coefficient(seq: &MonomialSeq, p: &Weight, index: &[usize]) -> f64 {
    let want = MultiIndex::one_based(index);
    numeric_coefficients(seq, p, &QuadratureOptions::default())
        .unwrap()
        .into_iter()
        .find(|c| c.index == want)
        .expect("coefficient present")
        .estimate
}

#[test]
fn closed_form_identity() {
    let opts = QuadratureOptions::default();
    for big_n in 1..=6 {
        for p in 2..=4 {
            let est = closed_form_integral(big_n, p, &opts).unwrap();
            let exact = closed_form_exact(big_n, p);
            assert!(est.converged);
            assert!(
                (est.value - exact).abs() < 1e-9,
                "N = {big_n}, p = {p}: {} vs {exact}",
                est.value
            );
            assert!(est.abs_error < 1e-8);
        }
    }
    assert!(closed_form_integral(0, 2, &opts).is_err());
    assert!(closed_form_integral(2, 1, &opts).is_err());
}

#[test]
fn two_point_facets_give_one() {
    for big_n in [1u64, 2, 3, 5] {
        // the pair (N, 0), (0, 1) spans one facet whose chart is 1 + t^N
        let a = seq(&[&[big_n, 0], &[0, 1]]);
        let c = coefficient(&a, &Weight::ones(2), &[1, 2]);
        assert!((c - 1.0).abs() < 1e-6, "N = {big_n}: {c}");
    }
    // an off-axis pair with lattice length 3 along the facet
    let a = seq(&[&[3, 0], &[0, 3]]);
    let c = coefficient(&a, &Weight::ones(2), &[1, 2]);
    assert!((c - 1.0).abs() < 1e-6, "{c}");
}

#[test]
fn three_point_facet_relation() {
    let a = seq(&[&[2, 0], &[1, 1], &[0, 2]]);
    let p = Weight::ones(3);
    let c12 = coefficient(&a, &p, &[1, 2]);
    let c13 = coefficient(&a, &p, &[1, 3]);
    let c23 = coefficient(&a, &p, &[2, 3]);
    assert!((2.0 * c12 + 4.0 * c13 + 2.0 * c23 - 4.0).abs() < 1e-6);
    for c in [c12, c13, c23] {
        assert!(c > 0.0 && c < 1.0, "{c}");
    }
    assert!((c12 - c23).abs() < 1e-6);

    let v = validate_coffe_numeric(&a, &p, &QuadratureOptions::default()).unwrap();
    assert!(v.max_residual().unwrap() < 1e-6);
}

#[test]
fn weighted_relation_with_three_points() {
    // scaled points (15,0), (12,3), (0,15) share the facet x + y = 15
    let a = seq(&[&[5, 0], &[4, 1], &[2, 2], &[0, 3]]);
    let p = Weight::new(vec![3, 3, 4, 5]).unwrap();
    let v = validate_coffe_numeric(&a, &p, &QuadratureOptions::default()).unwrap();
    assert_eq!(v.facets.len(), 1);
    match v.facets[0].check {
        FacetCheck::Checked { residual, abs_error } => {
            assert!(residual.abs() < 1e-6, "{residual}");
            assert!(abs_error < 1e-6);
        }
        FacetCheck::Skipped { .. } => panic!("two-variable facets always have a chart"),
    }
    for c in &v.coefficients {
        assert!(c.estimate > 10.0 * c.abs_error);
        assert!(c.estimate > 0.0 && c.estimate < 1.0);
    }
}

#[test]
fn more_cells_do_not_hurt() {
    let f = |x: f64| (-x * x).exp() * (1.0 + x).sqrt();
    let small = adaptive(f, 0.0, 4.0, 0.0, 8).unwrap();
    let large = adaptive(f, 0.0, 4.0, 0.0, 32).unwrap();
    let reference = adaptive(f, 0.0, 4.0, 1e-14, 4000).unwrap();
    assert!(!small.converged);
    assert!(small.cells <= 8 && large.cells <= 32);
    assert!((large.value - reference.value).abs() <= (small.value - reference.value).abs() + 1e-15);
    assert!(large.abs_error <= small.abs_error);
}

#[test]
fn budget_exhaustion_is_reported() {
    let opts = QuadratureOptions {
        abs_tol: 0.0,
        max_cells: 4,
        experimental: false,
    };
    let est = half_line_integral(1, &[0, 2], 2, &opts).unwrap();
    assert!(!est.converged);
    assert!((est.value - 0.5).abs() < 1e-2);
}

#[test]
fn numeric_results_are_deterministic() {
    let a = seq(&[&[2, 0], &[1, 1], &[0, 2]]);
    let p = Weight::ones(3);
    let first = numeric_coefficients(&a, &p, &QuadratureOptions::default()).unwrap();
    for _ in 0..3 {
        assert_eq!(
            numeric_coefficients(&a, &p, &QuadratureOptions::default()).unwrap(),
            first
        );
    }
}

#[test]
fn three_variables_need_the_experimental_flag() {
    let a = MonomialSeq::new(
        3,
        vec![
            ExpVec::from([2, 0, 0]),
            ExpVec::from([0, 3, 0]),
            ExpVec::from([0, 0, 4]),
            ExpVec::from([1, 1, 1]),
        ],
    )
    .unwrap();
    let p = Weight::ones(4);
    assert!(numeric_coefficients(&a, &p, &QuadratureOptions::default()).is_err());
    let est = numeric_coefficients(&a, &p, &QuadratureOptions::experimental()).unwrap();
    assert!(!est.is_empty());
    for c in est {
        assert!((c.estimate - 1.0).abs() < 1e-3, "{c:?}");
    }
}
