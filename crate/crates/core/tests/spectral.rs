mod common;

use std::f64::consts::PI;

use common::int;
use growth_core::algebra::SparseMatrix;
use growth_core::families::{all_families, FamilySpec};
use growth_core::series::{bn_sequence, GrowthRate};
use growth_core::spectral::{
    classify_classes, final_basic_stability, leading_eigendata, pf_eigenvalue, pfdim_filtration, period,
    scc_decomposition, subdominant_modulus, FiltrationOptions, Verdict, DEFAULT_BASIC_TOL,
};
use growth_core::weight::rational_to_f64;
use growth_core::{build_family, GrowthProblem, Strategy, Truncation, VertexKey};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use proptest::prelude::*;

fn truncation_of(rows: &[Vec<i64>]) -> Truncation {
    let dense: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
    Truncation {
        depth: 0,
        vertices: (0..rows.len() as i64).map(VertexKey::scalar).collect(),
        matrix: SparseMatrix::from_dense(&dense).unwrap(),
    }
}

fn family(spec: FamilySpec) -> GrowthProblem {
    build_family(&spec).unwrap()
}

#[test]
fn pf_examples() {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let fib = truncation_of(&[vec![0, 1], vec![1, 1]]);
    assert!((pf_eigenvalue(&fib.matrix, 1e-12).unwrap() - phi).abs() < 1e-10);

    let star = family(FamilySpec::Star { n: 9 }).expand_to_depth(1).unwrap();
    assert!((pf_eigenvalue(&star.matrix, 1e-12).unwrap() - 3.0).abs() < 1e-10);

    let line = family(FamilySpec::Sl2 { lambda: 1 }).expand_to_depth(6).unwrap();
    assert!((pf_eigenvalue(&line.matrix, 1e-12).unwrap() - 2.0 * (PI / 8.0).cos()).abs() < 1e-10);
}

#[test]
fn pf_agrees_with_dense_spectrum_on_periodic_classes() {
    for spec in [FamilySpec::Sl2 { lambda: 1 }, FamilySpec::Star { n: 7 }, FamilySpec::Sl3Vector] {
        let t = family(spec.clone()).expand_to_depth(9).unwrap();
        let dense = t.matrix.to_dense_f64();
        let radius = dense.complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max);
        let pf = pf_eigenvalue(&t.matrix, 1e-12).unwrap();
        assert!((pf - radius).abs() < 1e-8, "{spec}: {pf} vs {radius}");
    }
}

#[test]
fn scc_examples() {
    let psl2 = family(FamilySpec::Psl2F7Cutoff).expand_to_depth(16).unwrap();
    let scc = scc_decomposition(&psl2);
    let mut sizes: Vec<usize> = scc.classes.iter().map(|c| c.len()).collect();
    sizes.sort();
    assert_eq!(*sizes.last().unwrap(), 4);
    assert!(sizes[..sizes.len() - 1].iter().all(|&s| s == 1));

    let star = family(FamilySpec::Star { n: 6 }).expand_to_depth(3).unwrap();
    assert_eq!(scc_decomposition(&star).len(), 1);

    let jordan = family(FamilySpec::Jordan { alpha: "0".into() }).expand_to_depth(4).unwrap();
    let scc = scc_decomposition(&jordan);
    assert_eq!(scc.len(), 5);
    let order = scc.topological_order();
    for w in order.windows(2) {
        assert!(scc.dag[w[0]].contains(&w[1]));
    }
}

/// gcd of the lengths ≤ `max_len` of closed walks at vertex 0, by explicit walk enumeration.
fn closed_walk_gcd(adj: &[Vec<usize>], max_len: usize) -> usize {
    fn walk(adj: &[Vec<usize>], at: usize, len: usize, max_len: usize, g: &mut usize) {
        if len > 0 && at == 0 {
            *g = g.gcd(&len);
        }
        if len == max_len {
            return;
        }
        for &b in &adj[at] {
            walk(adj, b, len + 1, max_len, g);
        }
    }
    let mut g = 0;
    walk(adj, 0, 0, max_len, &mut g);
    g
}

#[test]
fn period_examples() {
    let sl2 = family(FamilySpec::Sl2 { lambda: 1 }).expand_to_depth(8).unwrap();
    let scc = scc_decomposition(&sl2);
    assert_eq!(period(&sl2, scc.class_of[0]).unwrap(), 2);

    let klein = family(FamilySpec::KleinFour).expand_to_depth(10).unwrap();
    let s = classify_classes(&klein, DEFAULT_BASIC_TOL).unwrap();
    let fbc = s.final_basic_classes()[0];
    assert_eq!(period(&klein, fbc).unwrap(), 1);
    // Chain vertices lie on no cycle.
    let unit_class = s.scc.class_of[0];
    assert!(period(&klein, unit_class).is_err());

    let sl3 = family(FamilySpec::Sl3Vector).expand_to_depth(8).unwrap();
    let scc = scc_decomposition(&sl3);
    let oracle = closed_walk_gcd(&sl3.adjacency(), 12);
    assert_eq!(oracle, 3);
    assert_eq!(period(&sl3, scc.class_of[0]).unwrap(), oracle);
}

#[test]
fn classify_examples() {
    let klein = family(FamilySpec::KleinFour).expand_to_depth(10).unwrap();
    let s = classify_classes(&klein, DEFAULT_BASIC_TOL).unwrap();
    let fbcs = s.final_basic_classes();
    assert_eq!(fbcs.len(), 1);
    let members: Vec<&VertexKey> = s.scc.classes[fbcs[0]].iter().map(|&v| &klein.vertices[v]).collect();
    assert_eq!(members, vec![&VertexKey::scalar(0)]);
    assert!((s.class_pf[fbcs[0]] - 3.0).abs() < 1e-12);

    let f2 = family(FamilySpec::Sl2F2);
    let t = f2.expand_to_depth(33).unwrap();
    let s = classify_classes(&t, DEFAULT_BASIC_TOL).unwrap();
    let basic = s.basic_classes();
    assert_eq!(basic.len(), 1);
    let deepest = s.scc.classes[basic[0]].iter().map(|&v| t.vertices[v].0[0]).min().unwrap();
    // The deepest block that is complete at this depth; the block starting at 32 is cut off.
    assert_eq!(deepest, 16);
    let stability = final_basic_stability(&f2, &[8, 16, 32], DEFAULT_BASIC_TOL).unwrap();
    assert!(stability.stable.is_none());
}

#[test]
fn eigendata_examples() {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let fib = family(FamilySpec::Fibonacci).expand_to_depth(2).unwrap();
    let d = leading_eigendata(&fib, 1).unwrap();
    assert!((d.pairs[0].kappa().re - phi / 5f64.sqrt()).abs() < 1e-12);

    let klein = family(FamilySpec::KleinFour).expand_to_depth(50).unwrap();
    let d = leading_eigendata(&klein, 1).unwrap();
    assert!((d.pairs[0].kappa().re - 0.25).abs() < 1e-9);

    let sl2 = family(FamilySpec::Sl2 { lambda: 1 }).expand_to_depth(20).unwrap();
    let d = leading_eigendata(&sl2, 2).unwrap();
    assert_eq!(d.pairs.len(), 2);
    assert!((d.pairs[1].eigenvalue + Complex64::new(d.lambda, 0.0)).norm() < 1e-9);
}

#[test]
fn subdominant_examples() {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let fib = family(FamilySpec::Fibonacci).expand_to_depth(2).unwrap();
    assert!((subdominant_modulus(&fib).unwrap() - (phi - 1.0)).abs() < 1e-12);
    let psl2 = family(FamilySpec::Psl2F7Cutoff).expand_to_depth(16).unwrap();
    assert!((subdominant_modulus(&psl2).unwrap() - 2f64.sqrt()).abs() < 1e-9);
    for k in [5, 20, 60] {
        let klein = family(FamilySpec::KleinFour).expand_to_depth(k).unwrap();
        assert!(subdominant_modulus(&klein).unwrap() < 1e-9);
    }
}

#[test]
fn filtration_examples() {
    let sl2 = family(FamilySpec::Sl2 { lambda: 1 });
    let schedule: Vec<usize> = (290..=300).collect();
    let est = pfdim_filtration(&sl2, Strategy::Naive, &schedule, &FiltrationOptions::default()).unwrap();
    for &(k, l) in &est.sequence {
        assert!((l - 2.0 * (PI / (k as f64 + 2.0)).cos()).abs() < 1e-9);
    }
    match est.verdict {
        Verdict::Finite(v) => assert!((v - 2.0).abs() < 1e-3),
        other => panic!("{other:?}"),
    }

    let young = family(FamilySpec::YoungLattice);
    let opts = FiltrationOptions { divergence_threshold: 5.0, ..FiltrationOptions::default() };
    let est = pfdim_filtration(&young, Strategy::Naive, &(0..=16).collect::<Vec<_>>(), &opts).unwrap();
    assert_eq!(est.verdict, Verdict::Infinite);

    let gl2 = family(FamilySpec::Gl2Vector);
    let est =
        pfdim_filtration(&gl2, Strategy::Naive, &(0..=30).collect::<Vec<_>>(), &FiltrationOptions::default()).unwrap();
    assert!(est.sequence.iter().all(|&(_, l)| l == 0.0));
    assert_eq!(est.verdict, Verdict::Finite(0.0));
}

#[test]
fn monotonicity() {
    for spec in all_families() {
        let gp = family(spec.clone());
        let max_k = match spec {
            FamilySpec::YoungLattice => 14,
            _ => 40,
        };
        let mut prev = 0.0f64;
        for k in 0..=max_k {
            let l = pf_eigenvalue(&gp.expand_to_depth(k).unwrap().matrix, 1e-12).unwrap();
            assert!(prev <= l + 1e-12 * l.max(1.0), "{spec} k={k}: {prev} > {l}");
            prev = l;
        }
    }
}

#[test]
fn eigen_residuals() {
    let cases = [
        (FamilySpec::Fibonacci, 2),
        (FamilySpec::KleinFour, 40),
        (FamilySpec::Psl2F7Cutoff, 16),
        (FamilySpec::Sl2 { lambda: 1 }, 30),
        (FamilySpec::Star { n: 5 }, 1),
    ];
    for (spec, depth) in cases {
        let t = family(spec.clone()).expand_to_depth(depth).unwrap();
        let s = classify_classes(&t, DEFAULT_BASIC_TOL).unwrap();
        let d = leading_eigendata(&t, s.period).unwrap();
        let m = t.matrix.to_dense_f64();
        for p in &d.pairs {
            let v = nalgebra::DVector::from_vec(p.right.clone());
            let mv = m.map(|x| Complex64::new(x, 0.0)) * &v;
            let residual = (mv - &v * p.eigenvalue).iter().map(|z| z.norm()).fold(0.0, f64::max);
            let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(residual <= 1e-8 * d.lambda * scale, "{spec}: {residual}");
            let dot: Complex64 = p.left.iter().zip(&p.right).map(|(a, b)| a * b).sum();
            assert!((dot - 1.0).norm() < 1e-10);
        }
    }
}

#[test]
fn exponential_growth() {
    // b_n^{1/n} approaches the PF eigenvalue of the cutoffs.
    let cases = [
        (FamilySpec::Fibonacci, 200),
        (FamilySpec::Psl2F7Cutoff, 200),
        (FamilySpec::Star { n: 4 }, 200),
        (FamilySpec::Sl2 { lambda: 1 }, 200),
        (FamilySpec::KleinFour, 200),
        (FamilySpec::Sl3Vector, 600),
    ];
    for (spec, n) in cases {
        let gp = family(spec.clone());
        let lambda = match spec {
            FamilySpec::Sl3Vector => spec.known_growth_rate().map(|r| r.to_f64()).unwrap(),
            _ => pf_eigenvalue(&gp.expand_to_depth(200).unwrap().matrix, 1e-12).unwrap(),
        };
        let b = bn_sequence(&gp, n).unwrap();
        let root = rational_to_f64(&b.terms[n]).ln() / n as f64;
        assert!((root.exp() - lambda).abs() <= 0.05, "{spec}: {} vs {lambda}", root.exp());
    }
    assert!(matches!(FamilySpec::Sl3Vector.known_growth_rate(), Some(GrowthRate::Exact(_))));
}

fn random_matrix(size: usize, entries: &[u8], density: &[bool]) -> Vec<Vec<i64>> {
    (0..size)
        .map(|i| (0..size).map(|j| if density[i * size + j] { entries[i * size + j] as i64 } else { 0 }).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn subdominant_below_pf(
        size in 1usize..=20,
        entries in prop::collection::vec(0u8..5, 400),
        density in prop::collection::vec(prop::bool::weighted(0.3), 400),
    ) {
        let t = truncation_of(&random_matrix(size, &entries, &density));
        let pf = pf_eigenvalue(&t.matrix, 1e-12).unwrap();
        let sec = subdominant_modulus(&t).unwrap();
        prop_assert!(sec <= pf + 1e-9 * pf.max(1.0));
    }

    #[test]
    fn scale_equivariance(
        size in 1usize..=12,
        entries in prop::collection::vec(1u8..5, 144),
        density in prop::collection::vec(prop::bool::weighted(0.4), 144),
        num in 1i64..7,
        den in 1i64..7,
    ) {
        let t = truncation_of(&random_matrix(size, &entries, &density));
        let s = BigRational::new(num.into(), den.into());
        let pf = pf_eigenvalue(&t.matrix, 1e-12).unwrap();
        let scaled = pf_eigenvalue(&t.scaled(&s).matrix, 1e-12).unwrap();
        prop_assert!((scaled - rational_to_f64(&s) * pf).abs() <= 1e-9 * scaled.max(1.0));
    }

    #[test]
    fn strongly_connected_is_one_final_basic_class(
        size in 1usize..=15,
        entries in prop::collection::vec(0u8..4, 225),
        density in prop::collection::vec(prop::bool::weighted(0.2), 225),
    ) {
        let mut rows = random_matrix(size, &entries, &density);
        // A Hamiltonian cycle makes the graph strongly connected.
        for j in 0..size {
            let i = (j + 1) % size;
            rows[i][j] = rows[i][j].max(1);
        }
        let t = truncation_of(&rows);
        let s = classify_classes(&t, DEFAULT_BASIC_TOL).unwrap();
        prop_assert_eq!(s.scc.len(), 1);
        prop_assert!(s.basic[0] && s.final_basic[0]);
    }
}
