use proptest::prelude::*;

use ratver::arena::PlayerId;
use ratver::epistemic::{common_know, know, mutual_know, Event, KripkeFrame};

fn frame(labels: &[Vec<usize>]) -> KripkeFrame {
    let k = labels[0].len();
    KripkeFrame::from_labels((0..k).map(|w| format!("w{w}")).collect(), labels.to_vec()).unwrap()
}

fn complement(e: &Event, k: usize) -> Event {
    Event::from_mask((0..k).map(|w| !e.contains(w)).collect())
}

fn frame_and_event() -> impl Strategy<Value = (Vec<Vec<usize>>, Vec<bool>)> {
    (1usize..=6, 1usize..=3).prop_flat_map(|(k, players)| {
        (
            prop::collection::vec(prop::collection::vec(0..k, k), players),
            prop::collection::vec(any::<bool>(), k),
        )
    })
}

proptest! {
    #[test]
    fn knowledge_laws((labels, mask) in frame_and_event()) {
        let k = mask.len();
        let fr = frame(&labels);
        let e = Event::from_mask(mask);
        let ck = common_know(&fr, &e).unwrap();
        let mk = mutual_know(&fr, &e).unwrap();
        prop_assert!(ck.is_subset(&mk));
        prop_assert_eq!(common_know(&fr, &ck).unwrap(), ck.clone());
        prop_assert!(ck.is_subset(&mutual_know(&fr, &ck).unwrap()));
        for p in 0..labels.len() {
            let kp = know(&fr, PlayerId(p), &e).unwrap();
            prop_assert!(kp.is_subset(&e));
            prop_assert!(mk.is_subset(&kp));
            prop_assert_eq!(know(&fr, PlayerId(p), &kp).unwrap(), kp.clone());
            let not_k = complement(&kp, k);
            prop_assert!(not_k.is_subset(&know(&fr, PlayerId(p), &not_k).unwrap()));
        }
    }

    #[test]
    fn knowledge_is_monotone((labels, mask) in frame_and_event(), extra in prop::collection::vec(any::<bool>(), 6)) {
        let fr = frame(&labels);
        let small = Event::from_mask(mask.clone());
        let big = Event::from_mask(mask.iter().zip(&extra).map(|(a, b)| *a || *b).collect());
        prop_assert!(common_know(&fr, &small).unwrap().is_subset(&common_know(&fr, &big).unwrap()));
        for p in 0..labels.len() {
            prop_assert!(know(&fr, PlayerId(p), &small).unwrap().is_subset(&know(&fr, PlayerId(p), &big).unwrap()));
        }
    }
}
