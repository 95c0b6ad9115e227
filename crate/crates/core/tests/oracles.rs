mod common;

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use common::*;
use hdts::bisim::strong_bisimilar;
use hdts::builders::path;
use hdts::dot::export_dot;
use hdts::hom::{count_pointed_maps, for_each_map, is_isomorphic};
use hdts::homotopy::{cocyl_pointed, cyl_csts, cyl_pointed};
use hdts::reflections::cs_reflect;
use hdts::similarity::is_reduced;
use hdts::{corpus, Label, PointedTs, Word};
use proptest::prelude::*;

/// Whether every pointed map from the pointed cylinder of `P(w)` sends both
/// copies of the end state to the same place.
fn ends_agree(x: &PointedTs, w: &Word) -> bool {
    let p = path(w);
    let cyl = cyl_pointed(&p).unwrap();
    let end = p.ts.state(&w.len().to_string()).unwrap();
    let (e0, e1) = (cyl.gamma0.state(end), cyl.gamma1.state(end));
    let mut agree = true;
    for_each_map(&cyl.cyl, &x.ts, &[(cyl.base.unwrap(), x.base)], false, |s, _| {
        if s[e0.index()] != s[e1.index()] {
            agree = false;
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    agree
}

/// Words over `labels` of length 1 to `max`.
fn words(labels: &[Label], max: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer = vec![Word::new(Vec::new())];
    for _ in 0..max {
        layer = layer
            .iter()
            .flat_map(|w| {
                labels.iter().map(move |l| {
                    let mut w = w.clone();
                    w.push(l.clone());
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// A non-diagonal past-similar pair is first reached one step after a
/// diagonal pair, so words no longer than the state count suffice.
fn reduced_by_cylinders(x: &PointedTs) -> bool {
    let labels: BTreeSet<Label> = x.ts.actions().map(|a| x.ts.label(a).clone()).collect();
    let labels: Vec<Label> = labels.into_iter().collect();
    let n = x.ts.state_count();
    words(&labels, n).iter().all(|w| ends_agree(x, w))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduced_iff_cylinder_ends_agree(r in star_recipe(3)) {
        let x = star_system(&r);
        prop_assert_eq!(is_reduced(&x).unwrap(), reduced_by_cylinders(&x));
    }

    #[test]
    fn cylinder_matches_reflected_raw_cylinder(r in recipe(3)) {
        let x = cs_system(&r);
        let ours = cyl_csts(&x).unwrap().cyl;
        let (oracle, _) = cs_reflect(&raw_cylinder(&x)).unwrap();
        prop_assert!(is_isomorphic(&ours, &oracle));
    }

    #[test]
    fn pointed_adjunction_counts(a in star_recipe(2), b in star_recipe(3)) {
        let (x, y) = (star_system(&a), star_system(&b));
        let cyl = cyl_pointed(&x).unwrap();
        let cyl = PointedTs::new(cyl.cyl, cyl.base.unwrap()).unwrap();
        let cocyl = cocyl_pointed(&y).unwrap();
        let cocyl = PointedTs::new(cocyl.cocyl, cocyl.base.unwrap()).unwrap();
        prop_assert_eq!(count_pointed_maps(&cyl, &y), count_pointed_maps(&x, &cocyl));
    }
}

#[test]
fn corpus_reducedness_matches_cylinders() {
    for (name, p) in corpus_pointed() {
        if p.ts.state_count() <= 5 {
            assert_eq!(is_reduced(&p).unwrap(), reduced_by_cylinders(&p), "{name}");
        }
    }
}

#[test]
fn figures_2_and_3_are_bisimilar() {
    // Same labelled 1-skeleton up to the crossing edges, which add no new
    // behaviour: every state after u can do v, and then nothing.
    let f2 = corpus::load("fig2").unwrap().pointed("fig2").unwrap();
    let f3 = corpus::load("fig3").unwrap().pointed("fig3").unwrap();
    assert!(strong_bisimilar(&f2, &f3).unwrap().is_some());
}

#[test]
fn figure_1_dot_counts() {
    let doc = corpus::load("fig1").unwrap();
    let sys = &doc.systems[0];
    let dot = export_dot(&sys.name, &sys.ts, sys.base);
    assert_eq!(dot.lines().filter(|l| l.contains("[label=") && !l.contains("->") && !l.contains("shape=box")).count(), 4);
    assert_eq!(dot.lines().filter(|l| l.contains("->") && !l.contains("style=dashed")).count(), 4);
    assert_eq!(dot.matches("shape=box").count(), 1);
}

#[test]
fn figure_1_is_the_square() {
    let fig1 = corpus::load("fig1").unwrap();
    let square = hdts::builders::cube(&[Label::from("u"), Label::from("v")]);
    assert!(is_isomorphic(&fig1.systems[0].ts, &square));
}
