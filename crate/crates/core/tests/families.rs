mod common;

use std::path::Path;

use common::{int, TiltingCharacters};
use growth_core::families::{
    load_explicit, load_explicit_str, psl2_f7_matrix, sl2_clebsch_gordan, KleinFour, PSL2_F7_UNIT,
};
use growth_core::interchange::GraphInterchange;
use growth_core::series::bn_sequence;
use growth_core::{build_family, FamilySpec, GrowthOptions, VertexKey};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn data_file() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/data/psl2_f7.json"))
}

#[test]
fn clebsch_gordan_examples() {
    assert_eq!(sl2_clebsch_gordan(1, 1), vec![0, 2]);
    assert_eq!(sl2_clebsch_gordan(3, 2), vec![1, 3, 5]);
    assert_eq!(sl2_clebsch_gordan(0, 7), vec![7]);
}

proptest! {
    #[test]
    fn clebsch_gordan_matches_characters(l in 0u64..12, m in 0u64..12) {
        // dim L(λ)⊗L(μ) = Σ dim L(ν).
        let dims: u64 = sl2_clebsch_gordan(l, m).iter().map(|v| v + 1).sum();
        prop_assert_eq!(dims, (l + 1) * (m + 1));
    }
}

#[test]
fn sl2_out_degree() {
    for lambda in 1..=5u32 {
        let gp = build_family(&FamilySpec::Sl2 { lambda }).unwrap();
        for mu in 0..40i64 {
            let out = gp.out_edges(&VertexKey::scalar(mu)).unwrap();
            assert_eq!(out.len() as i64, mu.min(lambda as i64) + 1);
        }
    }
}

#[test]
fn sl2_tensor_decomposition_matches_characters() {
    // Decomposing L(λ)⊗L(μ) from characters alone.
    for lambda in 1..=4i64 {
        let gp = build_family(&FamilySpec::Sl2 { lambda: lambda as u32 }).unwrap();
        for mu in 0..20i64 {
            let mut ch = std::collections::BTreeMap::new();
            for a in (-lambda..=lambda).step_by(2) {
                for b in (-mu..=mu).step_by(2) {
                    *ch.entry(a + b).or_insert(0i64) += 1;
                }
            }
            let expected: Vec<(i64, i64)> = ch
                .iter()
                .filter(|(w, _)| **w >= 0)
                .map(|(w, c)| (*w, c - ch.get(&(w + 2)).copied().unwrap_or(0)))
                .filter(|(_, d)| *d != 0)
                .collect();
            let got: Vec<(i64, i64)> = gp
                .out_edges(&VertexKey::scalar(mu))
                .unwrap()
                .into_iter()
                .map(|e| (e.target.0[0], e.weight.to_string().parse().unwrap()))
                .collect();
            assert_eq!(got, expected, "lambda={lambda} mu={mu}");
        }
    }
}

#[test]
fn klein_dimension_bookkeeping() {
    let gp = build_family(&FamilySpec::KleinFour).unwrap();
    let mut sources = vec![KleinFour::projective()];
    sources.extend((0..=20).map(|k| KleinFour::chain(2 * k + 1)));
    for v in sources {
        let total: i64 = gp
            .out_edges(&v)
            .unwrap()
            .iter()
            .map(|e| e.weight.to_string().parse::<i64>().unwrap() * KleinFour::dimension(&e.target))
            .sum();
        assert_eq!(total, 3 * KleinFour::dimension(&v), "{v}");
    }
}

#[test]
fn sl2_f2_matches_tilting_characters() {
    // Vertex i stands for the tilting module T(i − 1); the distinguished element is T(1).
    let gp = build_family(&FamilySpec::Sl2F2).unwrap();
    let mut tilt = TiltingCharacters::new();
    let t1 = tilt.get(1);
    for i in 1..=130i64 {
        let ti = tilt.get(i - 1);
        let mut product = std::collections::BTreeMap::new();
        for (x, c) in &t1 {
            for (y, d) in &ti {
                *product.entry(x + y).or_insert(0i64) += c * d;
            }
        }
        product.retain(|_, v| *v != 0);
        let expected: Vec<(i64, String)> =
            tilt.decompose(product).into_iter().map(|(top, c)| (top + 1, c.to_string())).collect();
        let got: Vec<(i64, String)> =
            gp.out_edges(&VertexKey::scalar(i)).unwrap().into_iter().map(|e| (e.target.0[0], e.weight.to_string())).collect();
        assert_eq!(got, expected, "vertex {i}");
    }
}

/// Characteristic polynomial coefficients (monic, highest degree first) by Faddeev–LeVerrier.
fn char_poly(a: &[Vec<BigRational>]) -> Vec<BigRational> {
    let n = a.len();
    let mul = |x: &[Vec<BigRational>], y: &[Vec<BigRational>]| -> Vec<Vec<BigRational>> {
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &x[i][k] * &y[k][j]).sum()).collect()).collect()
    };
    let mut coeffs = vec![int(1)];
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        let mut next = mul(a, &m);
        for i in 0..n {
            next[i][i] += coeffs[k - 1].clone();
        }
        m = next;
        let am = mul(a, &m);
        let trace: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs.push(-trace / int(k as i64));
    }
    coeffs
}

#[test]
fn psl2_projective_cell_characteristic_polynomial() {
    let m = psl2_f7_matrix();
    let block: Vec<Vec<BigRational>> = (0..4).map(|i| m[i][..4].to_vec()).collect();
    // x(x − 3)(x² + x + 2)
    assert_eq!(char_poly(&block), vec![int(1), int(-2), int(-1), int(-6), int(0)]);
}

#[test]
fn psl2_dimension_sequence() {
    let gp = build_family(&FamilySpec::Psl2F7Cutoff).unwrap();
    let b = bn_sequence(&gp, 2).unwrap();
    assert_eq!(b.terms, vec![int(1), int(1), int(1)]);
    // Along the non-projective chain each vertex feeds the next one in the printed order.
    for j in PSL2_F7_UNIT..10 {
        let chain: Vec<i64> = gp
            .out_edges(&VertexKey::scalar(j as i64))
            .unwrap()
            .into_iter()
            .map(|e| e.target.0[0])
            .filter(|&i| i >= PSL2_F7_UNIT as i64)
            .collect();
        assert_eq!(chain, vec![j as i64 + 1]);
    }
    assert_eq!(&growth_core::families::PSL2_F7_DIMENSIONS[PSL2_F7_UNIT..PSL2_F7_UNIT + 4], &[1, 3, 9, 11]);
}

#[test]
fn explicit_examples() {
    let opts = GrowthOptions::default();
    let fib = load_explicit_str("m", "[[0,1],[1,1]]", Some(0), opts.clone()).unwrap();
    let builtin = build_family(&FamilySpec::Fibonacci).unwrap();
    assert_eq!(bn_sequence(&fib, 20).unwrap(), bn_sequence(&builtin, 20).unwrap());

    let one = load_explicit_str("m", "[[1]]", Some(0), opts.clone()).unwrap();
    assert!(bn_sequence(&one, 10).unwrap().terms.iter().all(|t| *t == int(1)));

    let rational = load_explicit_str("m", r#"[["1/2", 0], [1, "0.25"]]"#, Some(0), opts).unwrap();
    assert_eq!(bn_sequence(&rational, 1).unwrap().terms[1], BigRational::new(3.into(), 2.into()));
}

#[test]
fn shipped_psl2_file_matches_builtin() {
    let from_file = load_explicit(data_file(), Some(PSL2_F7_UNIT), GrowthOptions::default()).unwrap();
    let builtin = build_family(&FamilySpec::Psl2F7Cutoff).unwrap();
    assert_eq!(bn_sequence(&from_file, 30).unwrap(), bn_sequence(&builtin, 30).unwrap());
    let a = from_file.expand_to_depth(16).unwrap();
    let b = builtin.expand_to_depth(16).unwrap();
    assert_eq!(a.matrix, b.matrix);
    // The file's own unit field agrees.
    let default_unit = load_explicit(data_file(), None, GrowthOptions::default()).unwrap();
    assert_eq!(default_unit.expand_to_depth(16).unwrap().matrix, b.matrix);
}

#[test]
fn interchange_round_trip() {
    for spec in [FamilySpec::KleinFour, FamilySpec::Jordan { alpha: "1/2".into() }, FamilySpec::YoungLattice] {
        let gp = build_family(&spec).unwrap();
        let t = gp.expand_to_depth(6).unwrap();
        let json = GraphInterchange::from_truncation(&gp, &t).to_json().unwrap();
        let back = load_explicit_str("dump", &json, None, GrowthOptions::default()).unwrap();
        let t2 = back.expand_to_depth(t.len()).unwrap();
        assert_eq!(t2.len(), t.len(), "{spec}");
        assert_eq!(t2.matrix, t.matrix, "{spec}");
    }
}

#[test]
fn known_growth_rates() {
    use growth_core::series::GrowthRate;
    assert_eq!(FamilySpec::Star { n: 9 }.known_growth_rate(), Some(GrowthRate::Exact(int(3))));
    assert_eq!(FamilySpec::Sl2 { lambda: 3 }.known_growth_rate(), Some(GrowthRate::Exact(int(4))));
    assert_eq!(FamilySpec::YoungLattice.known_growth_rate(), Some(GrowthRate::Infinite));
    assert_eq!(FamilySpec::Jordan { alpha: "0".into() }.known_growth_rate(), None);
}
