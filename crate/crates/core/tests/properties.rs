//! Randomized checks at sizes beyond the exhaustive bounds.

use proptest::prelude::*;
use sortstat::bicolored;
use sortstat::perm::{self, Permutation};
use sortstat::signed::{self, SignedPermutation};
use sortstat::{matching, RestrictionSequence};

/// A restriction sequence and a member of its class, built position by
/// position from the free values `<= r_k`.
fn restricted(max_n: usize) -> impl Strategy<Value = (RestrictionSequence, Permutation)> {
    (1..=max_n).prop_flat_map(|n| (prop::collection::vec(0..n, n), prop::collection::vec(any::<u32>(), n))).prop_map(
        |(raw, picks)| {
            let n = raw.len();
            let mut r: Vec<usize> = raw.iter().map(|x| x + 1).collect();
            r.sort_unstable();
            for (k, x) in r.iter_mut().enumerate() {
                *x = (*x).max(k + 1);
            }
            let mut used = vec![false; n + 1];
            let mut window = Vec::with_capacity(n);
            for k in 0..n {
                let free: Vec<usize> = (1..=r[k]).filter(|&v| !used[v]).collect();
                let v = free[picks[k] as usize % free.len()];
                used[v] = true;
                window.push(v);
            }
            (RestrictionSequence::new(r).unwrap(), Permutation::new(window).unwrap())
        },
    )
}

fn signed_restricted(max_n: usize) -> impl Strategy<Value = (RestrictionSequence, SignedPermutation)> {
    (restricted(max_n), any::<u64>()).prop_map(|((r, p), mask)| (r, SignedPermutation::with_signs(&p, mask)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn factorization_recomposes(p in restricted(10)) {
        let s = p.1;
        let n = s.n();
        let prod = s.sor_factorization().iter().fold(Permutation::identity(n), |acc, &(i, j)| {
            acc.compose(&Permutation::transposition(n, i, j)).unwrap()
        });
        prop_assert_eq!(prod, s);
    }

    #[test]
    fn identity_base_recovers_sor((r, s) in restricted(10)) {
        let id = Permutation::identity(s.n());
        prop_assert_eq!(perm::sor_r(&s, &id, &r).unwrap(), s.sor());
    }

    #[test]
    fn type_a_transport((r, s) in restricted(9), (_, s0) in restricted(9)) {
        let m = perm::f_r(&s, &r).unwrap();
        prop_assert_eq!(&perm::f_r_inv(&m, &r).unwrap(), &s);
        prop_assert_eq!(m.ne(), s.inv());
        if s0.n() == s.n() && s0.is_in_class(&r) {
            let m0 = perm::f_r(&s0, &r).unwrap();
            prop_assert_eq!(perm::sor_r(&s, &s0, &r).unwrap(), matching::sor(&m, &m0).unwrap());
            let rel = s.compose(&s0.inverse()).unwrap();
            prop_assert_eq!(rel.cyc(), matching::cyc(&m, &m0).unwrap());
        }
    }

    #[test]
    fn type_b_transport((r, s) in signed_restricted(8)) {
        let m = signed::g_r(&s, &r).unwrap();
        prop_assert_eq!(&signed::g_r_inv(&m, &r).unwrap(), &s);
        prop_assert_eq!(m.mix(), s.inv_b());
        let id = SignedPermutation::identity(s.n());
        let m0 = signed::g_r(&id, &r).unwrap();
        let sor = signed::sor_r_b(&s, &id, &r).unwrap();
        prop_assert_eq!(sor, s.sor_b());
        prop_assert_eq!(sor, bicolored::sor_bicolored(&m, &m0).unwrap());
        let (c0, c1) = bicolored::cyc01_sets(&m, &m0).unwrap();
        prop_assert_eq!(s.cyc0_set().to_vec(), c0.to_vec());
        prop_assert_eq!(s.cyc1_set().to_vec(), c1.to_vec());
    }

    #[test]
    fn signed_factorizations_recompose((_, s) in signed_restricted(8)) {
        let n = s.n();
        let recompose = |f: Vec<(i32, usize)>| f.into_iter().fold(SignedPermutation::identity(n), |acc, t| {
            acc.compose(&SignedPermutation::transposition(n, t)).unwrap()
        });
        prop_assert_eq!(&recompose(s.sor_b_factorization()), &s);
        if s.is_type_d() {
            prop_assert_eq!(&recompose(s.sor_d_factorization().unwrap()), &s);
            prop_assert_eq!(s.inv_d().unwrap(), s.inv_b() - s.neg_count());
        }
    }

    #[test]
    fn text_round_trips((_, s) in signed_restricted(12)) {
        let back: SignedPermutation = s.to_string().parse().unwrap();
        prop_assert_eq!(&back, &s);
        let p = s.abs_perm();
        let back: Permutation = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }
}
