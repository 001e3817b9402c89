use std::cmp::Ordering;

use chainforge::constructor::{BlockArray, TaggedShortArray};
use chainforge::semantics::{compare, enumerate_elements, ElementAddress};
use chainforge::strings::IndexString;
use chainforge::tails::{check_with_oracle, UniformityReport};
use chainforge::terms::{Block, ChainTerm};
use chainforge::trees::{build_tree, STree, WeightSeq};
use proptest::prelude::*;

fn arb_string() -> impl Strategy<Value = IndexString> {
    (1usize..=5).prop_flat_map(|len| {
        (0..len)
            .map(|i| 0..=i as u32)
            .collect::<Vec<_>>()
            .prop_map(|entries| IndexString::new(entries).unwrap())
    })
}

/// A string together with three of its elements at coordinate bound 2.
fn arb_triple(
) -> impl Strategy<Value = (IndexString, ElementAddress, ElementAddress, ElementAddress)> {
    arb_string().prop_flat_map(|s| {
        let xs = enumerate_elements(&s, 2).unwrap();
        let pick = prop::sample::select(xs);
        (Just(s), pick.clone(), pick.clone(), pick)
    })
}

proptest! {
    #[test]
    fn compare_is_a_total_order((s, x, y, z) in arb_triple()) {
        let xy = compare(&s, &x, &y).unwrap();
        prop_assert_eq!(compare(&s, &y, &x).unwrap(), xy.reverse());
        prop_assert_eq!(xy == Ordering::Equal, x == y);
        let yz = compare(&s, &y, &z).unwrap();
        if xy != Ordering::Greater && yz != Ordering::Greater {
            prop_assert_ne!(compare(&s, &x, &z).unwrap(), Ordering::Greater);
        }
    }

    #[test]
    fn address_text_round_trips((_, x, _, _) in arb_triple()) {
        let back: ElementAddress = x.to_string().parse().unwrap();
        prop_assert_eq!(&back, &x);
        let json = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<ElementAddress>(&json).unwrap(), x);
    }

    #[test]
    fn string_json_round_trips(s in arb_string()) {
        let json = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(serde_json::from_str::<IndexString>(&json).unwrap(), s.clone());
        let tree = build_tree(&s);
        let back: STree = serde_json::from_str(&serde_json::to_string(&tree).unwrap()).unwrap();
        prop_assert_eq!(back, tree);
    }
}

#[test]
fn invalid_strings_rejected_by_json() {
    assert!(serde_json::from_str::<IndexString>("[0,2]").is_err());
    assert!(serde_json::from_str::<IndexString>("[1]").is_err());
    assert!(serde_json::from_str::<IndexString>("[]").is_err());
}

#[test]
fn report_json_shape() {
    let s: IndexString = "0,1,0".parse().unwrap();
    let mm: BlockArray = "M0,M1,M2".parse().unwrap();
    let report = check_with_oracle(&s, &mm, true).unwrap();
    let v = serde_json::to_value(&report).unwrap();
    assert_eq!(
        v,
        serde_json::json!({
            "condition_a": true,
            "condition_b": false,
            "witnesses": {"a": null, "b": [1, 2]},
            "oracle_uniform": false,
        })
    );
    assert_eq!(
        serde_json::from_value::<UniformityReport>(v).unwrap(),
        report
    );
}

#[test]
fn value_types_json_round_trip() {
    let mm: BlockArray = "M0,fM1,f^2U3".parse().unwrap();
    let back: BlockArray = serde_json::from_str(&serde_json::to_string(&mm).unwrap()).unwrap();
    assert_eq!(back, mm);
    let uu: TaggedShortArray = "0:U0,3:U3".parse().unwrap();
    let back: TaggedShortArray =
        serde_json::from_str(&serde_json::to_string(&uu).unwrap()).unwrap();
    assert_eq!(back, uu);
    let b: Block = serde_json::from_str("\"fM2\"").unwrap();
    assert_eq!(b.to_string(), "fM2");
    let wt: WeightSeq = serde_json::from_str("[3,0,1]").unwrap();
    assert_eq!(wt.to_string(), "3,0,1");
    let t: ChainTerm = "M0 + M1.N".parse().unwrap();
    assert_eq!(t.to_string(), "M0 + M1.N");
}
