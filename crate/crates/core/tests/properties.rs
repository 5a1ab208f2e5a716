use ignatiev::frame::{rel_r, rel_s, SuitableSequence};
use ignatiev::logic::entails;
use ignatiev::oracle::{random_formula, random_ordinal, random_point, random_sequence};
use ignatiev::{Formula, IgnatievPoint, Ordinal};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ordinal() -> impl Strategy<Value = Ordinal> {
    any::<u64>().prop_map(|s| random_ordinal(&mut ChaCha8Rng::seed_from_u64(s), 3))
}

fn point() -> impl Strategy<Value = IgnatievPoint> {
    any::<u64>().prop_map(|s| random_point(&mut ChaCha8Rng::seed_from_u64(s), 3, 4))
}

fn sequence() -> impl Strategy<Value = SuitableSequence> {
    any::<u64>().prop_map(|s| random_sequence(&mut ChaCha8Rng::seed_from_u64(s), 3, 4))
}

fn formula() -> impl Strategy<Value = Formula> {
    any::<u64>().prop_map(|s| random_formula(&mut ChaCha8Rng::seed_from_u64(s), 4, 2))
}

proptest! {
    #[test]
    fn addition_is_associative(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn addition_is_monotone(a in ordinal(), b in ordinal(), c in ordinal()) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(&lo + &c <= &hi + &c);
        if lo < hi {
            prop_assert!(&c + &lo < &c + &hi);
        }
        prop_assert!(c <= &c + &lo);
    }

    #[test]
    fn end_part_of_a_sum(a in ordinal(), b in ordinal()) {
        let s = &a + &b;
        let want = if b.is_zero() { a.ell() } else { b.ell() };
        prop_assert_eq!(s.ell(), want);
    }

    #[test]
    fn decompose_last_recomposes(a in ordinal()) {
        match a.decompose_last() {
            None => prop_assert!(a.is_zero()),
            Some((rest, ell)) => {
                prop_assert_eq!(&rest + &Ordinal::omega_pow(ell.clone()), a.clone());
                prop_assert!(rest < a);
            }
        }
    }

    #[test]
    fn successor_and_predecessor(a in ordinal()) {
        prop_assert_eq!(a.succ().pred(), Ok(a.clone()));
        prop_assert_eq!(a.is_successor(), a.pred().is_ok());
        prop_assert!(a.is_zero() || a.is_limit() != a.is_successor());
    }

    #[test]
    fn meet_is_a_semilattice(p in point(), q in point(), r in point()) {
        let pq = p.glb(&q);
        prop_assert_eq!(&pq, &q.glb(&p));
        prop_assert_eq!(pq.glb(&r), p.glb(&q.glb(&r)));
        prop_assert_eq!(p.glb(&p), p.clone());
        prop_assert!(pq.leq(&p) && pq.leq(&q));
        prop_assert_eq!(IgnatievPoint::new(pq.coords().to_vec()), Ok(pq.clone()));
    }

    #[test]
    fn meet_is_greatest(p in point(), q in point(), r in point()) {
        // r & p & q lies below both, so it lies below their meet.
        let lower = r.glb(&p).glb(&q);
        prop_assert!(lower.leq(&p.glb(&q)));
        if r.leq(&p) && r.leq(&q) {
            prop_assert!(r.leq(&p.glb(&q)));
        }
    }

    #[test]
    fn operators_are_monotone(p in point(), q in point(), n in 0usize..4) {
        let lo = p.glb(&q);
        prop_assert!(lo.diamond(n).leq(&p.diamond(n)));
        prop_assert!(lo.nabla(n).leq(&p.nabla(n)));
        prop_assert!(p.leq(&p.nabla(n)));
        prop_assert!(p.diamond(n + 1).leq(&p.diamond(n)));
        prop_assert!(p.diamond(n).diamond(n).leq(&p.diamond(n)));
    }

    #[test]
    fn entailment_is_a_preorder(a in formula(), b in formula(), c in formula()) {
        prop_assert!(entails(&a, &a));
        if entails(&a, &b) && entails(&b, &c) {
            prop_assert!(entails(&a, &c));
        }
        let ab = Formula::and(a.clone(), b.clone());
        prop_assert!(entails(&ab, &a) && entails(&ab, &b));
    }

    #[test]
    fn principal_sequences_contain_exactly_the_upper_set(p in point(), q in point()) {
        let s = SuitableSequence::principal(&p);
        prop_assert_eq!(s.contains(&q), p.leq(&q));
    }

    #[test]
    fn sigma_output_is_suitable(f in sequence(), n in 0usize..4) {
        let s = f.sigma(n);
        prop_assert_eq!(ignatiev::frame::is_suitable(s.as_raw()), Ok(()));
        prop_assert_eq!(s.to_string().parse::<SuitableSequence>(), Ok(s.clone()));
    }

    #[test]
    fn relations_are_coarser_at_lower_indices(f in sequence(), g in sequence(), n in 1usize..4) {
        if rel_s(n, &f, &g) {
            prop_assert!(rel_s(n - 1, &f, &g));
        }
        prop_assert!(rel_s(n, &f, &f));
        if rel_r(n, &f, &g) {
            prop_assert!(rel_s(n, &f, &g));
        }
    }
}
