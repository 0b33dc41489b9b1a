mod common;

use common::{graph, matroid, signatures, table, weight_pair};
use orbij::geometry::{locate_point, verify_cube_decomposition, HalfOpenCell, RationalPoint};
use orbij::linalg::RatMatrix;
use orbij::oracle::{table_one_evaluations, SubsetCounts};
use orbij::{
    BijectionTable, Caps, EdgeSet, Orientation, OrientedMatroid, PartialOrientation, RegularMatroidRep, Signature,
    SignatureSide,
};
use proptest::prelude::*;

/// A totally unimodular representation of the dual: rows `e_f - Σ_i A'[i][f] e_{b_i}`
/// for `f ∉ B`, where `A' = A_B⁻¹ A`.
fn dual(m: &OrientedMatroid) -> OrientedMatroid {
    let rep = m.rep().unwrap();
    let (n, r) = (m.element_count(), m.rank());
    let basis = m.bases()[0].to_vec();
    let cols: Vec<Vec<i64>> = basis.iter().map(|&e| rep.column(e)).collect();
    let refs: Vec<&[i64]> = cols.iter().map(Vec::as_slice).collect();
    let inv = RatMatrix::from_int_columns(r, &refs).inverse().unwrap();
    let reduced = inv.mul(&RatMatrix::from_int_rows(rep.matrix()));
    let rows: Vec<Vec<i64>> = m.bases()[0]
        .complement(n)
        .iter()
        .map(|f| {
            let mut row = vec![0i64; n];
            row[f] = 1;
            for (i, &b) in basis.iter().enumerate() {
                row[b] = -i64::try_from(reduced[(i, f)].to_integer()).unwrap();
            }
            row
        })
        .collect();
    let caps = Caps::default();
    OrientedMatroid::from_rep(RegularMatroidRep::new(rows, &caps).unwrap(), &caps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn g_is_separating_into_compatible_orientations(seed in any::<u64>()) {
        let m = matroid(&graph(seed, 6, 9));
        let t = table(&m, seed);
        let pairs = t.g_pairs();
        for &(_, o) in pairs {
            prop_assert!(t.sigma().is_compatible(o) && t.sigma_star().is_compatible(o));
        }
        for (i, &(b1, o1)) in pairs.iter().enumerate() {
            for &(b2, o2) in &pairs[i + 1..] {
                let witness = b1.symmetric_difference(b2).iter().any(|e| o1.get(e) != o2.get(e));
                prop_assert!(witness, "{} {}", b1, b2);
            }
        }
    }

    #[test]
    fn phi_is_a_separating_bijection(seed in any::<u64>()) {
        let g = graph(seed, 6, 9);
        let m = matroid(&g);
        let t = table(&m, seed);
        let n = m.element_count();
        let mut images: Vec<EdgeSet> = t.forward().to_vec();
        images.sort();
        images.dedup();
        prop_assert_eq!(images.len(), 1 << n);
        for a in Orientation::all(n) {
            prop_assert_eq!(t.phi_inverse(t.phi(a)).unwrap(), a);
            for b in Orientation::all(n).filter(|&b| b > a) {
                let sep = a.disagreement(b).intersection(t.phi(a).symmetric_difference(t.phi(b)));
                prop_assert!(!sep.is_empty());
                let sep_star = a.disagreement(b).intersection(t.phi_star(a).symmetric_difference(t.phi_star(b)));
                prop_assert!(!sep_star.is_empty());
            }
        }
        let tutte = SubsetCounts::from_tutte(&table_one_evaluations(&g, &Caps::default()).unwrap());
        prop_assert_eq!(SubsetCounts::of_table(&t), tutte);
    }

    #[test]
    fn dual_matroid_table_is_the_complement(seed in any::<u64>()) {
        let m = matroid(&graph(seed, 5, 8));
        prop_assume!(m.rank() > 0 && m.rank() < m.element_count());
        let md = dual(&m);
        prop_assert_eq!(md.rank(), m.element_count() - m.rank());
        let (w, w_star) = weight_pair(m.element_count(), seed);
        let (s, t) = signatures(&m, seed);
        // circuits of the dual are the cocircuits of m with the same signs, so
        // the same weights induce the transferred choices
        let sd = Signature::from_weights(&md, &w_star, SignatureSide::Circuit).unwrap();
        let td = Signature::from_weights(&md, &w, SignatureSide::Cocircuit).unwrap();
        prop_assert_eq!(sd.choices(), t.choices());
        prop_assert_eq!(td.choices(), s.choices());
        let table = BijectionTable::build(&m, &s, &t).unwrap();
        let dual_table = BijectionTable::build(&md, &sd, &td).unwrap();
        prop_assert_eq!(dual_table.forward().to_vec(), table.dual_forward());
    }

    #[test]
    fn cells_and_local_maps(seed in any::<u64>()) {
        let m = matroid(&graph(seed, 5, 7));
        let t = table(&m, seed);
        let n = m.element_count();
        for o in Orientation::all(n) {
            let cell = HalfOpenCell::new(o, t.phi(o));
            prop_assert_eq!(cell.dimension(), t.phi(o).len());
            prop_assert_eq!(locate_point(&t, &RationalPoint::lattice(o)).unwrap(), o);
        }
        let whole = t.local_phi(&PartialOrientation::new()).unwrap();
        for (x, s) in whole {
            prop_assert_eq!(t.phi(Orientation::from_bits(x.0, n)), s);
        }
        let a = verify_cube_decomposition(t.forward(), n, 500, seed).unwrap();
        prop_assert!(a.passed);
        prop_assert_eq!(a.clone(), verify_cube_decomposition(t.forward(), n, 500, seed).unwrap());
        prop_assert_eq!(a.seed, seed);
    }
}
