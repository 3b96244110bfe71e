//! Cross-module oracles: every quantity computed two independent ways.

use intertwine::jets::poly;
use intertwine::jordan::{segre_from_weyr, weyr_from_segre};
use intertwine::specmap::split_profile;
use intertwine::{
    apply_function_contour, apply_function_jet, build_matrix, degree_of_zero, map_spectrum,
    mobius_algebra, spectrum, spectrum_of_spec, verify_mapping, CMatrix, Exact, Float,
    GroupElement, HoloFunction, JordanBlock, JordanSpec, MapMode, Scalar, Tolerances,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Exact {
    Exact::from_ratio(n, d)
}

fn gauss(re: (i64, i64), im: (i64, i64)) -> Exact {
    q(re.0, re.1) + q(im.0, im.1) * Exact::i()
}

/// `N(a) D(a)^{-1}` by Horner's rule, no jets involved.
fn horner_rational<S: Scalar>(f: &HoloFunction<S>, a: &CMatrix<S>) -> CMatrix<S> {
    let (num, den) = f.to_rational().expect("rational test function");
    let eval = |c: &[S]| {
        c.iter().rev().fold(CMatrix::zeros(a.dim()), |acc, ci| {
            acc.checked_mul(a).unwrap().shifted(&-ci.clone())
        })
    };
    eval(&num)
        .checked_mul(&eval(&den).inverse().unwrap())
        .unwrap()
}

fn spec_strategy() -> impl Strategy<Value = JordanSpec<Exact>> {
    // up to three distinct eigenvalues, up to five blocks of length <= 4
    let value =
        (-4i64..=4, 1i64..=5, -4i64..=4, 1i64..=5).prop_map(|(a, b, c, d)| gauss((a, b), (c, d)));
    (
        prop::collection::vec(value, 1..=3),
        prop::collection::vec((0usize..3, 1usize..=4), 1..=5),
    )
        .prop_filter_map(
            "distinct eigenvalues inside the disk",
            |(values, blocks)| {
                let mut distinct: Vec<Exact> = Vec::new();
                for v in values {
                    if v.to_c64().norm() < 0.95 && !distinct.contains(&v) {
                        distinct.push(v);
                    }
                }
                if distinct.is_empty() {
                    return None;
                }
                let blocks = blocks
                    .into_iter()
                    .map(|(i, k)| {
                        let v = distinct[i % distinct.len()].clone();
                        JordanBlock::new(format!("l{}", i % distinct.len()), v, k)
                    })
                    .collect();
                Some(JordanSpec::new(blocks))
            },
        )
}

fn unimodular(n: usize, seed: &[i64]) -> CMatrix<Exact> {
    let pick = |i: usize, j: usize| Exact::from_i64(seed[(i * 7 + j * 3) % seed.len()]);
    let lower = CMatrix::from_fn(n, |i, j| {
        if i == j {
            Exact::from_i64(1)
        } else if i > j {
            pick(i, j)
        } else {
            Exact::from_i64(0)
        }
    });
    let upper = CMatrix::from_fn(n, |i, j| {
        if i == j {
            Exact::from_i64(1)
        } else if i < j {
            pick(j, i)
        } else {
            Exact::from_i64(0)
        }
    });
    lower.checked_mul(&upper).unwrap()
}

#[test]
fn jet_route_matches_direct_horner_on_blaschke() {
    let spec = JordanSpec::new(vec![
        JordanBlock::new("a", q(1, 2), 4),
        JordanBlock::new("b", gauss((-1, 3), (1, 4)), 3),
        JordanBlock::new("a", q(1, 2), 2),
    ])
    .with_transform(unimodular(9, &[1, -2, 0, 1, 2, -1]));
    let f = HoloFunction::blaschke(vec![(q(1, 2), 3), (gauss((1, 5), (-1, 5)), 1)]);
    let a = build_matrix(&spec).unwrap();
    assert_eq!(
        apply_function_jet(&f, &spec).unwrap(),
        horner_rational(&f, &a)
    );
}

#[test]
fn exact_dense_and_structural_spectra_agree() {
    let spec = JordanSpec::new(vec![
        JordanBlock::new("x", gauss((2, 3), (0, 1)), 3),
        JordanBlock::new("y", gauss((0, 1), (-1, 2)), 2),
        JordanBlock::new("x", gauss((2, 3), (0, 1)), 3),
        JordanBlock::new("z", q(-3, 4), 1),
    ])
    .with_transform(unimodular(9, &[2, -1, 1, 0, -2]));
    let tol = Tolerances::default();
    let structural = spectrum_of_spec(&spec, &tol).unwrap();
    let a = build_matrix(&spec).unwrap();
    let eigs: Vec<Exact> = spec.labels().into_iter().map(|(_, v)| v).collect();
    let dense = spectrum(&a, Some(&eigs), &tol).unwrap();
    assert!(structural.same_multiset(&dense, 0.0));
}

#[test]
fn float_spectrum_of_a_dense_jordan_matrix() {
    // J_3(0.3) + J_1(-0.5i) conjugated by a well-conditioned transform
    let spec = JordanSpec::from_values(vec![
        (Complex64::new(0.3, 0.0), 3),
        (Complex64::new(0.0, -0.5), 1),
    ]);
    let p = CMatrix::from_fn(4, |i, j| {
        Complex64::new(
            if i == j {
                2.0
            } else {
                0.3 * (i as f64 - j as f64)
            },
            0.1,
        )
    });
    let a = build_matrix(&spec.with_transform(p)).unwrap();
    let sp = spectrum(&a, None, &Tolerances::default()).unwrap();
    let mut ks: Vec<usize> = sp.points().iter().map(|p| p.k).collect();
    ks.sort_unstable();
    assert_eq!(ks, vec![1, 3]);
}

#[test]
fn contour_agrees_with_jets_for_rational_functions() {
    let spec = JordanSpec::from_values(vec![
        (Complex64::from_polar(0.75, std::f64::consts::FRAC_PI_4), 3),
        (
            Complex64::from_polar(2.0 / 3.0, 5.0 * std::f64::consts::PI / 6.0),
            4,
        ),
    ]);
    let one = Complex64::new(1.0, 0.0);
    let f = HoloFunction::Rational {
        num: vec![one, one],
        den: vec![one * 3.0, -one],
    };
    let a = build_matrix(&spec).unwrap();
    let jet = apply_function_jet(&f, &spec).unwrap();
    let contour = apply_function_contour(&f, &a, 1024).unwrap();
    assert!(jet.frobenius_distance(&contour) < 1e-9);
    assert!(jet.frobenius_distance(&horner_rational(&f, &a)) < 1e-12);
}

#[test]
fn mobius_image_keeps_the_block_structure() {
    let spec = JordanSpec::new(vec![
        JordanBlock::new("l1", q(1, 2), 3),
        JordanBlock::new("l2", gauss((0, 1), (1, 3)), 2),
        JordanBlock::new("l1", q(1, 2), 1),
    ]);
    let tol = Tolerances::default();
    let g = GroupElement::new(q(5, 4), q(3, 4), &tol).unwrap();
    let moved = mobius_algebra(&g, &build_matrix(&spec).unwrap(), &tol).unwrap();
    let phi = HoloFunction::mobius(&g);
    let images: Vec<Exact> = spec
        .labels()
        .iter()
        .map(|(_, v)| phi.eval(v).unwrap())
        .collect();
    let sp = spectrum(&moved, Some(&images), &tol).unwrap();
    let mut ks: Vec<usize> = sp.points().iter().map(|p| p.k).collect();
    ks.sort_unstable();
    assert_eq!(ks, vec![1, 2, 3]);
    let report = verify_mapping(&phi, &spec, &tol).unwrap();
    assert!(report.matches && report.literal_discrepancies.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn split_prediction_equals_recomputed_spectrum(spec in spec_strategy(), m in 1usize..=4, shift in -2i64..=2, pick in 0usize..3) {
        let tol = Tolerances::default();
        let labels = spec.labels();
        let at = labels[pick % labels.len()].1.clone();
        // phi(z) = shift/3 + (z - at)^m
        let mut coeffs = poly::pow(&[-at, Exact::from_i64(1)], m);
        coeffs[0] = coeffs[0].clone() + q(shift, 3);
        let phi = HoloFunction::Polynomial(coeffs);
        let source = spectrum_of_spec(&spec, &tol).unwrap();
        let predicted = map_spectrum(&phi, &source, MapMode::Split, &tol).unwrap();
        let b = apply_function_jet(&phi, &spec).unwrap();
        let images: Vec<Exact> = labels.iter().map(|(_, v)| phi.eval(v).unwrap()).collect();
        let recomputed = spectrum(&b, Some(&images), &tol).unwrap();
        prop_assert!(predicted.same_multiset(&recomputed, 0.0), "{} vs {}", predicted, recomputed);
        prop_assert_eq!(predicted.dimension(), spec.dim());
    }

    #[test]
    fn spectrum_dimension_is_the_matrix_size(spec in spec_strategy()) {
        let sp = spectrum_of_spec(&spec, &Tolerances::default()).unwrap();
        prop_assert_eq!(sp.dimension(), spec.dim());
        prop_assert_eq!(sp.len(), spec.blocks.len());
    }

    #[test]
    fn split_profile_is_a_partition(k in 1usize..=40, m in 1usize..=12) {
        let parts = split_profile(k, m);
        prop_assert_eq!(parts.iter().sum::<usize>(), k);
        prop_assert_eq!(parts.len(), m.min(k));
        prop_assert!(parts.windows(2).all(|w| w[0] >= w[1] && w[0] - w[1] <= 1));
    }

    #[test]
    fn weyr_and_segre_are_conjugate(mut segre in prop::collection::vec(1usize..=8, 1..=8)) {
        segre.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(segre_from_weyr(&weyr_from_segre(&segre)), segre);
    }

    #[test]
    fn degree_of_power_zero(m in 1usize..=6, re in -3i64..=3, im in -3i64..=3) {
        let at = gauss((re, 4), (im, 4));
        let mut coeffs = poly::pow(&[-at.clone(), Exact::from_i64(1)], m);
        coeffs[0] = coeffs[0].clone() + Exact::from_i64(2);
        let phi: HoloFunction<Exact> = HoloFunction::Polynomial(coeffs);
        prop_assert_eq!(degree_of_zero(&phi, &at, 8, &Tolerances::default()).unwrap(), m);
    }

    #[test]
    fn float_and_exact_jets_agree(spec in spec_strategy(), c in prop::collection::vec((-3i64..=3, 1i64..=4), 1..=6)) {
        let f: HoloFunction<Exact> = HoloFunction::Polynomial(c.iter().map(|&(n, d)| q(n, d)).collect());
        let exact = apply_function_jet(&f, &spec).unwrap().to_float();
        let float = apply_function_jet(&f.to_float(), &spec.map(|x| x.to_c64())).unwrap();
        prop_assert!(exact.frobenius_distance(&float) < 1e-12);
    }
}

#[test]
fn similarity_never_changes_the_exact_spectrum() {
    let tol = Tolerances::default();
    let base = JordanSpec::new(vec![
        JordanBlock::new("u", q(1, 3), 2),
        JordanBlock::new("v", gauss((-1, 2), (1, 2)), 2),
        JordanBlock::new("u", q(1, 3), 1),
    ]);
    let a = build_matrix(&base).unwrap();
    let eigs = vec![q(1, 3), gauss((-1, 2), (1, 2))];
    let reference = spectrum(&a, Some(&eigs), &tol).unwrap();
    for seed in [[1, 2, -1], [0, 1, 1], [-2, 1, 2], [2, 2, -2]] {
        let p = unimodular(5, &seed);
        let b = a.conjugate_by(&p).unwrap();
        assert_eq!(spectrum(&b, Some(&eigs), &tol).unwrap(), reference);
    }
}

#[test]
fn float_payload_labels_survive_irrational_values() {
    let theta = std::f64::consts::PI / 7.0;
    let spec: JordanSpec<Float> = JordanSpec::new(vec![
        JordanBlock::new("p", Complex64::from_polar(0.5, theta), 3),
        JordanBlock::new("q", Complex64::from_polar(0.5, -theta), 2),
    ]);
    let sp = spectrum_of_spec(&spec, &Tolerances::default()).unwrap();
    let labels: Vec<_> = sp
        .points()
        .iter()
        .map(|p| (p.label.clone().unwrap(), p.k))
        .collect();
    assert!(labels.contains(&("p".to_string(), 3)) && labels.contains(&("q".to_string(), 2)));
}
