use proptest::prelude::*;
use radokit::constructions::{build_finitary, parse_cycles, render_cycles};
use radokit::rado::{decode_pair, encode_pair, witness_direct};
use radokit::syntax::{parse_set, parse_view};
use radokit::table::PermTable;
use radokit::witness::witness_least;
use radokit::{adjacent, DisjointPair, GraphView, VertexSet};

fn set() -> impl Strategy<Value = VertexSet> {
    let leaf = prop_oneof![
        proptest::collection::vec(0u128..40, 0..5).prop_map(VertexSet::finite),
        (0u128..20).prop_map(VertexSet::Nbhd),
        (0u128..20).prop_map(VertexSet::NonNbhdStrict),
        Just(VertexSet::All),
        (0u128..6, 6u128..12).prop_map(|(a, b)| VertexSet::witness(vec![a], vec![b]).unwrap()),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        (inner.clone(), inner, 0..4u8).prop_map(|(a, b, op)| match op {
            0 => VertexSet::union(a, b),
            1 => VertexSet::intersection(a, b),
            2 => VertexSet::difference(a, b),
            _ => VertexSet::symdiff(a, b),
        })
    })
}

fn view() -> impl Strategy<Value = GraphView> {
    Just(GraphView::Base).prop_recursive(3, 8, 1, |inner| {
        prop_oneof![
            (inner.clone(), set()).prop_map(|(g, s)| GraphView::switch(g, s)),
            (inner.clone(), set()).prop_map(|(g, s)| GraphView::flip_within(g, s)),
            (inner.clone(), set()).prop_map(|(g, s)| GraphView::restrict(g, s)),
            (inner.clone(), proptest::collection::vec(0u128..30, 1..3)).prop_map(|(g, d)| GraphView::delete(g, d)),
            inner.prop_map(GraphView::flip_matching),
        ]
    })
}

fn pair() -> impl Strategy<Value = DisjointPair> {
    proptest::collection::vec(0u8..3, 0..12).prop_map(|digits| {
        let (mut u, mut v) = (vec![], vec![]);
        for (i, d) in digits.into_iter().enumerate() {
            match d {
                1 => u.push(i as u128),
                2 => v.push(i as u128),
                _ => {}
            }
        }
        DisjointPair::new(u, v).unwrap()
    })
}

proptest! {
    #[test]
    fn view_text_round_trips(v in view()) {
        let text = v.to_string();
        prop_assert_eq!(parse_view(&text).unwrap(), v);
    }

    #[test]
    fn set_text_round_trips(s in set()) {
        prop_assert_eq!(parse_set(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn least_witness_is_sound(p in pair()) {
        let z = witness_direct(&p).unwrap();
        prop_assert!(p.is_witness(z));
        let least = witness_least(&GraphView::Base, &p, z).unwrap().unwrap();
        prop_assert!(least <= z && p.is_witness(least));
        prop_assert!((0..least).all(|y| !p.is_witness(y)));
    }

    #[test]
    fn pair_code_round_trips(p in pair()) {
        prop_assert_eq!(decode_pair(encode_pair(&p)), p);
    }

    #[test]
    fn switching_twice_is_identity(x in proptest::collection::vec(0u128..64, 0..8), u in 0u128..200, v in 0u128..200) {
        prop_assume!(u != v);
        let s = VertexSet::finite(x.clone());
        let twice = GraphView::switch(GraphView::switch(GraphView::Base, s.clone()), s);
        prop_assert_eq!(twice.adjacent(u, v).unwrap(), adjacent(u, v));
        let once = GraphView::switch(GraphView::Base, VertexSet::finite(x.clone()));
        prop_assert_eq!(once.adjacent(u, v).unwrap(), adjacent(u, v) ^ (x.contains(&u) != x.contains(&v)));
    }

    #[test]
    fn finitary_tables_round_trip(perm in Just((0u128..7).collect::<Vec<_>>()).prop_shuffle()) {
        let mut cycles = vec![];
        let mut seen = [false; 7];
        for i in 0..7 {
            if seen[i] || perm[i] == i as u128 { continue; }
            let mut c = vec![];
            let mut j = i;
            while !seen[j] { seen[j] = true; c.push(j as u128); j = perm[j] as usize; }
            cycles.push(c);
        }
        prop_assert_eq!(parse_cycles(&render_cycles(&cycles)).unwrap(), cycles.clone());
        let t = build_finitary(&cycles).unwrap();
        prop_assert_eq!(PermTable::from_text(&t.to_text()).unwrap(), t.clone());
        for i in 0..7u128 {
            prop_assert_eq!(t.image(i), Some(perm[i as usize]));
        }
    }
}
