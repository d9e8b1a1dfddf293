use ctxcalc::tagset::{Bound, Ident, TagSet, TagValue};
use proptest::prelude::*;

/// Members of `{l to u step p}` by walking from the anchor, without any
/// modular arithmetic.
fn progression(l: i64, u: i64, p: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut e = l;
    if p > 0 {
        while e <= u {
            out.push(e);
            e += p;
        }
    } else {
        while e >= u {
            out.push(e);
            e += p;
        }
    }
    out
}

fn finite_range() -> impl Strategy<Value = (i64, i64, i64)> {
    (-60i64..60, -60i64..60, prop_oneof![1i64..7, -7i64..-1])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn membership_matches_walk((l, u, p) in finite_range()) {
        let ts = TagSet::range(Bound::Finite(l), Bound::Finite(u), p).unwrap();
        let members = progression(l, u, p);
        for t in (l.min(u) - 5)..=(l.max(u) + 5) {
            prop_assert_eq!(ts.contains(&t.into()), members.contains(&t), "t = {}", t);
        }
        let listed: Vec<TagValue> = members.iter().map(|&n| n.into()).collect();
        prop_assert_eq!(ts.enumerate().unwrap(), listed);
    }

    #[test]
    fn next_previous_inverse((l, u, p) in finite_range()) {
        let ts = TagSet::range(Bound::Finite(l), Bound::Finite(u), p).unwrap();
        let members = ts.enumerate().unwrap();
        for pair in members.windows(2) {
            prop_assert_eq!(ts.next(&pair[0]).unwrap(), pair[1].clone());
            prop_assert_eq!(ts.previous(&pair[1]).unwrap(), pair[0].clone());
        }
        if let Some(last) = members.last() {
            prop_assert!(ts.next(last).is_err());
        }
        if let Some(first) = members.first() {
            prop_assert!(ts.previous(first).is_err());
        }
    }

    #[test]
    fn half_infinite_ranges(a in -50i64..50, p in 1i64..6, t in -200i64..200) {
        let up = TagSet::range(Bound::Finite(a), Bound::PosInf, p).unwrap();
        prop_assert_eq!(up.contains(&t.into()), t >= a && (t - a) % p == 0);
        let down = TagSet::range(Bound::NegInf, Bound::Finite(a), p).unwrap();
        prop_assert_eq!(down.contains(&t.into()), t <= a && (a - t) % p == 0);
        if up.contains(&t.into()) {
            let n = up.next(&t.into()).unwrap();
            prop_assert!(up.contains(&n));
            prop_assert_eq!(up.previous(&n).unwrap(), TagValue::Int(t));
        }
        if down.contains(&t.into()) && t != a {
            let n = down.next(&t.into()).unwrap();
            prop_assert_eq!(down.previous(&n).unwrap(), TagValue::Int(t));
        }
    }

    #[test]
    fn direction_does_not_change_membership(l in -40i64..40, span in 0i64..40, p in 1i64..6) {
        let descending = TagSet::range(Bound::Finite(l), Bound::Finite(l - span), -p).unwrap();
        let members = descending.enumerate().unwrap();
        let lowest = members.last().unwrap().as_int().unwrap();
        let ascending = TagSet::range(Bound::Finite(lowest), Bound::Finite(l), p).unwrap();
        for t in (l - span - 5)..=(l + 5) {
            prop_assert_eq!(descending.contains(&t.into()), ascending.contains(&t.into()));
        }
    }

    #[test]
    fn symbols_never_in_integer_ranges(
        l in -10i64..10,
        name in "[a-z][a-z0-9_]{0,5}".prop_filter_map("reserved word", |s| Ident::new(s).ok()),
    ) {
        let ts = TagSet::range(Bound::Finite(l), Bound::PosInf, 1).unwrap();
        let sym = TagValue::Symbol(name);
        prop_assert!(!ts.contains(&sym));
    }
}
