//! Past-similarity, fibrancy, reduction, the collapse reflection and the
//! weak-equivalence tests built on them.
//!
//! Two states are past-similar when the pair is reachable from `(*, *)` in the
//! star-shaped path object: a step `(α⁻,α⁺) → (β⁻,β⁺)` along an action `u`
//! needs all four 1-transitions `(α^±, u, β^±)`.

use std::collections::{BTreeSet, VecDeque};

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::axioms::{check_csa1, check_csa2, class_of, SystemClass};
use crate::closure::quotient;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::reflections::cs_reflect;
use crate::star::{is_star_shaped, PointedMap, PointedTs};
use crate::system::{ActionId, StateId, Transition, TransitionSystem, TsMap};

/// A finite set of ordered state pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StateRelation {
    pub pairs: BTreeSet<(StateId, StateId)>,
}

impl StateRelation {
    pub fn contains(&self, a: StateId, b: StateId) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| self.contains(b, a))
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| {
            self.pairs
                .range((b, StateId(0))..=(b, StateId(u32::MAX)))
                .all(|&(_, c)| self.contains(a, c))
        })
    }

    pub fn is_diagonal(&self) -> bool {
        self.pairs.iter().all(|(a, b)| a == b)
    }

    /// Everything related to `a` on the right.
    pub fn image(&self, a: StateId) -> impl Iterator<Item = StateId> + '_ {
        self.pairs
            .range((a, StateId(0))..=(a, StateId(u32::MAX)))
            .map(|&(_, b)| b)
    }

    /// The generated equivalence on `0..n`.
    pub fn equivalence(&self, n: usize) -> Partition {
        Partition::from_pairs(n, self.pairs.iter().map(|&(a, b)| (a.index(), b.index())))
    }

    /// Pairs of names, for display.
    pub fn named<'a>(&self, left: &'a TransitionSystem, right: &'a TransitionSystem) -> Vec<(&'a str, &'a str)> {
        self.pairs
            .iter()
            .map(|&(a, b)| (left.state_name(a), right.state_name(b)))
            .collect()
    }
}

/// A finite set of ordered action pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ActionRelation {
    pub pairs: BTreeSet<(ActionId, ActionId)>,
}

impl ActionRelation {
    pub fn contains(&self, a: ActionId, b: ActionId) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn is_diagonal(&self) -> bool {
        self.pairs.iter().all(|(a, b)| a == b)
    }

    pub fn equivalence(&self, n: usize) -> Partition {
        Partition::from_pairs(n, self.pairs.iter().map(|&(a, b)| (a.index(), b.index())))
    }
}

impl Serialize for StateRelation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.pairs.len()))?;
        for &(a, b) in &self.pairs {
            seq.serialize_element(&(a.0, b.0))?;
        }
        seq.end()
    }
}

fn require_star(pts: &PointedTs, operation: &'static str) -> Result<()> {
    if !is_star_shaped(pts) {
        return Err(Error::NotStarShaped(operation));
    }
    Ok(())
}

/// Targets of the 1-transitions `(s, u, -)`, indexed by state then action.
fn one_step(ts: &TransitionSystem) -> Vec<Vec<Vec<StateId>>> {
    let mut out = vec![vec![Vec::new(); ts.action_count()]; ts.state_count()];
    for (s, a, t) in ts.one_transitions() {
        out[s.index()][a.index()].push(t);
    }
    out
}

pub fn past_similar(pts: &PointedTs) -> Result<StateRelation> {
    require_star(pts, "past_similar")?;
    let ts = &pts.ts;
    let step = one_step(ts);
    let mut seen = BTreeSet::from([(pts.base, pts.base)]);
    let mut queue = VecDeque::from([(pts.base, pts.base)]);
    while let Some((a, b)) = queue.pop_front() {
        for u in ts.actions() {
            let from_a = &step[a.index()][u.index()];
            let from_b = &step[b.index()][u.index()];
            let common: Vec<StateId> = from_a.iter().copied().filter(|t| from_b.contains(t)).collect();
            for &c in &common {
                for &d in &common {
                    if seen.insert((c, d)) {
                        queue.push_back((c, d));
                    }
                }
            }
        }
    }
    Ok(StateRelation { pairs: seen })
}

/// `u ≃ v` when the labels agree and some 1-transitions `(α,u,β)`, `(α,v,β)` exist.
pub fn csa1_relation(ts: &TransitionSystem) -> ActionRelation {
    let mut pairs = BTreeSet::new();
    for (_, a, _) in ts.one_transitions() {
        pairs.insert((a, a));
    }
    for v in check_csa1(ts) {
        pairs.insert((v.first, v.second));
        pairs.insert((v.second, v.first));
    }
    ActionRelation { pairs }
}

/// A transition whose endpoints can be replaced by past-similar states
/// without staying a transition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrancyWitness {
    pub transition: Transition,
    pub missing: Transition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fibrancy {
    pub fibrant: bool,
    pub witness: Option<FibrancyWitness>,
}

pub fn is_fibrant(pts: &PointedTs) -> Result<Fibrancy> {
    let rel = past_similar(pts)?;
    let ts = &pts.ts;
    for t in ts.transitions() {
        for g in rel.image(t.source) {
            for d in rel.image(t.target) {
                let moved = Transition::new(g, t.actions.clone(), d);
                if !ts.contains(&moved) {
                    return Ok(Fibrancy {
                        fibrant: false,
                        witness: Some(FibrancyWitness {
                            transition: t.clone(),
                            missing: moved,
                        }),
                    });
                }
            }
        }
    }
    Ok(Fibrancy {
        fibrant: true,
        witness: None,
    })
}

pub fn is_reduced(pts: &PointedTs) -> Result<bool> {
    Ok(past_similar(pts)?.is_diagonal())
}

/// Quotients by the equivalences generated by past-similarity and by parallel
/// same-label actions until nothing merges. Returns the reduced system and
/// the unit from `pts`.
pub fn reduce(pts: &PointedTs) -> Result<(PointedTs, PointedMap)> {
    require_star(pts, "reduce")?;
    let mut current = pts.clone();
    let mut unit = TsMap::identity(&pts.ts);
    loop {
        let states = past_similar(&current)?.equivalence(current.ts.state_count());
        let actions = csa1_relation(&current.ts).equivalence(current.ts.action_count());
        if states.is_discrete() && actions.is_discrete() {
            break;
        }
        let (next, proj) = quotient(&current.ts, &states, &actions)?;
        current = PointedTs::new(next, proj.state(current.base))?;
        unit = unit.then(&proj)?;
    }
    if !check_csa1(&current.ts).is_empty() || !check_csa2(&current.ts).is_empty() {
        return Err(Error::Internal("reduction is not a Cattani-Sassone system".into()));
    }
    let base = current.base;
    Ok((current, PointedMap::new(unit, pts.base, base)?))
}

/// Identifies all states, then reflects back into Cattani-Sassone systems.
pub fn collapse_reflect(ts: &TransitionSystem) -> Result<(TransitionSystem, TsMap)> {
    let found = class_of(ts);
    if found != SystemClass::CattaniSassone {
        return Err(Error::WrongClass {
            operation: "collapse_reflect",
            required: SystemClass::CattaniSassone,
            found,
        });
    }
    let (q, proj) = quotient(
        ts,
        &Partition::full(ts.state_count()),
        &Partition::discrete(ts.action_count()),
    )?;
    let (r, unit) = cs_reflect(&q)?;
    Ok((r, proj.then(&unit)?))
}

/// The map `R(X) → R(Y)` with `Rf ∘ ψX = ψY ∘ f`, given onto units.
fn induced(f: &TsMap, unit_x: &TsMap, unit_y: &TsMap) -> Result<TsMap> {
    let rx = unit_x.target();
    let ry = unit_y.target();
    let mut states: Vec<Option<StateId>> = vec![None; rx.state_count()];
    for s in f.source().states() {
        let img = unit_y.state(f.state(s));
        let slot = &mut states[unit_x.state(s).index()];
        match slot {
            Some(prev) if *prev != img => {
                return Err(Error::Internal("induced map on reductions is not well defined".into()))
            }
            _ => *slot = Some(img),
        }
    }
    let mut actions: Vec<Option<ActionId>> = vec![None; rx.action_count()];
    for a in f.source().actions() {
        let img = unit_y.action(f.action(a));
        let slot = &mut actions[unit_x.action(a).index()];
        match slot {
            Some(prev) if *prev != img => {
                return Err(Error::Internal("induced map on reductions is not well defined".into()))
            }
            _ => *slot = Some(img),
        }
    }
    let states = states
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Internal("unit is not onto on states".into()))?;
    let actions = actions
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Internal("unit is not onto on actions".into()))?;
    TsMap::new(rx.clone(), ry.clone(), states, actions)
        .map_err(|e| Error::Internal(format!("induced map on reductions: {e}")))
}

/// Weak equivalence of star-shaped systems: the reductions are isomorphic via `f`.
pub fn is_weak_equivalence_star(f: &PointedMap) -> Result<bool> {
    let (_, ux) = reduce(&f.source())?;
    let (_, uy) = reduce(&f.target())?;
    Ok(induced(&f.map, &ux.map, &uy.map)?.is_isomorphism())
}

/// Weak equivalence of plain systems: the collapses are isomorphic via `f`.
pub fn is_weak_equivalence_csts(f: &TsMap) -> Result<bool> {
    let (_, ux) = collapse_reflect(f.source())?;
    let (_, uy) = collapse_reflect(f.target())?;
    Ok(induced(f, &ux, &uy)?.is_isomorphism())
}

/// Homotopy of two maps into a fibrant target: equal on actions and
/// past-similar on states.
pub fn homotopic_maps(f: &PointedMap, g: &PointedMap) -> Result<bool> {
    if f.map.source() != g.map.source()
        || f.map.target() != g.map.target()
        || f.source_base != g.source_base
        || f.target_base != g.target_base
    {
        return Err(Error::MismatchedMaps);
    }
    require_star(&f.source(), "homotopic_maps")?;
    let target = f.target();
    if !is_fibrant(&target)?.fibrant {
        return Err(Error::NotFibrant("homotopic_maps"));
    }
    if f.map.action_map() != g.map.action_map() {
        return Ok(false);
    }
    let rel = past_similar(&target)?;
    Ok(f.map
        .source()
        .states()
        .all(|s| rel.contains(f.map.state(s), g.map.state(s))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{cube, double, path, Word};
    use crate::colimits::wedge;
    use crate::hom::is_isomorphic;
    use crate::system::Label;

    fn pointed(trans: &[(&str, &str, &str)], labels: &[(&str, &str)]) -> PointedTs {
        let mut states = BTreeSet::new();
        for (s, _, t) in trans {
            states.insert(*s);
            states.insert(*t);
        }
        let mut b = TransitionSystem::builder().states(states);
        for (a, l) in labels {
            b = b.action(*a, *l);
        }
        for (s, a, t) in trans {
            b = b.transition(s, &[a], t);
        }
        PointedTs::with_base_name(b.build().unwrap(), "*").unwrap()
    }

    fn fig2() -> PointedTs {
        pointed(
            &[("*", "u", "b1"), ("*", "u", "b2"), ("b1", "v", "a"), ("b2", "v", "b")],
            &[("u", "u"), ("v", "v")],
        )
    }

    fn fig3() -> PointedTs {
        pointed(
            &[
                ("*", "u", "b1"),
                ("*", "u", "b2"),
                ("b1", "v", "a"),
                ("b2", "v", "b"),
                ("b1", "v", "b"),
                ("b2", "v", "a"),
            ],
            &[("u", "u"), ("v", "v")],
        )
    }

    fn fig4() -> PointedTs {
        pointed(
            &[("*", "u", "a"), ("*", "u", "b"), ("*", "v", "b"), ("*", "v", "c")],
            &[("u", "u"), ("v", "v")],
        )
    }

    fn sim(p: &PointedTs, a: &str, b: &str) -> bool {
        past_similar(p)
            .unwrap()
            .contains(p.ts.state(a).unwrap(), p.ts.state(b).unwrap())
    }

    #[test]
    fn figures() {
        assert!(sim(&fig3(), "a", "b"));
        assert!(!sim(&fig2(), "a", "b"));
        assert!(sim(&fig2(), "b1", "b2"));
        let f4 = fig4();
        assert!(sim(&f4, "a", "b") && sim(&f4, "b", "c") && !sim(&f4, "a", "c"));
        assert!(!past_similar(&f4).unwrap().is_transitive());
        for p in [fig2(), fig3(), fig4()] {
            let r = past_similar(&p).unwrap();
            assert!(r.is_symmetric());
            assert!(p.ts.states().all(|s| r.contains(s, s)));
        }
    }

    #[test]
    fn fibrancy() {
        assert!(is_fibrant(&fig3()).unwrap().fibrant);
        let f2 = is_fibrant(&fig2()).unwrap();
        assert!(!f2.fibrant);
        assert!(f2.witness.is_some());
        assert!(is_fibrant(&path(&Word::from_letters("uv"))).unwrap().fibrant);
    }

    #[test]
    fn reducedness_and_reduction() {
        assert!(is_reduced(&path(&Word::from_letters("uvw"))).unwrap());
        assert!(!is_reduced(&fig3()).unwrap());
        let (r2, u2) = reduce(&fig2()).unwrap();
        let (r3, _) = reduce(&fig3()).unwrap();
        assert!(is_reduced(&r2).unwrap());
        assert!(is_isomorphic(&r2.ts, &r3.ts));
        assert!(is_isomorphic(&r2.ts, &path(&Word::from_letters("uv")).ts));
        assert!(u2.map.is_onto_states() && u2.map.is_onto_actions() && u2.map.is_onto_transitions());
        let (r4, _) = reduce(&fig4()).unwrap();
        assert_eq!(r4.ts.state_count(), 2);
        assert_eq!(r4.ts.transition_count(), 2);
        let p = path(&Word::from_letters("uv"));
        let (rp, up) = reduce(&p).unwrap();
        assert_eq!(rp, p);
        assert!(up.map.is_identity());
    }

    #[test]
    fn csa1_relation_examples() {
        let c = cube(&[Label::from("x"), Label::from("y")]);
        assert!(csa1_relation(&c).is_diagonal());
        let par = TransitionSystem::builder()
            .states(["a", "b"])
            .action("u", "x")
            .action("v", "x")
            .transition("a", &["u"], "b")
            .transition("a", &["v"], "b")
            .build()
            .unwrap();
        let r = csa1_relation(&par);
        assert!(r.contains(ActionId(0), ActionId(1)));
        let pu = path(&Word::from_letters("u"));
        let (w, _) = wedge(&[pu.clone(), pu]).unwrap();
        assert!(csa1_relation(&w.ts).is_diagonal());
    }

    #[test]
    fn collapses() {
        let (a, _) = collapse_reflect(&double("x")).unwrap();
        let (b, _) = collapse_reflect(&cube(&[Label::from("x")])).unwrap();
        assert!(is_isomorphic(&a, &b));
        assert_eq!((a.state_count(), a.action_count(), a.transition_count()), (1, 1, 1));
        let (e, _) = collapse_reflect(&TransitionSystem::empty()).unwrap();
        assert_eq!(e, TransitionSystem::empty());
        let (sq, _) = collapse_reflect(&cube(&[Label::from("x"), Label::from("y")])).unwrap();
        assert_eq!((sq.state_count(), sq.action_count()), (1, 2));
    }

    #[test]
    fn weak_equivalences() {
        let f2 = fig2();
        let f3 = fig3();
        let incl = TsMap::from_names(
            f2.ts.clone(),
            f3.ts.clone(),
            &[("*", "*"), ("b1", "b1"), ("b2", "b2"), ("a", "a"), ("b", "b")],
            &[("u", "u"), ("v", "v")],
        )
        .unwrap();
        let incl = PointedMap::from_pointed(incl, &f2, &f3).unwrap();
        assert!(is_weak_equivalence_star(&incl).unwrap());
        assert!(is_weak_equivalence_star(&PointedMap::identity(&f3)).unwrap());
        let d = double("x");
        let c = cube(&[Label::from("x")]);
        let m = TsMap::from_names(d.clone(), c, &[("1", "0"), ("2", "1"), ("3", "0"), ("4", "1")], &[("x", "(x,1)")]).unwrap();
        assert!(is_weak_equivalence_csts(&m).unwrap());
        assert!(is_weak_equivalence_csts(&TsMap::identity(&d)).unwrap());
    }

    #[test]
    fn homotopies() {
        let f3 = fig3();
        let p = path(&Word::from_letters("uv"));
        let to = |end: &str, mid: &str| {
            let m = TsMap::from_names(
                p.ts.clone(),
                f3.ts.clone(),
                &[("0", "*"), ("1", mid), ("2", end)],
                &[("(u,1)", "u"), ("(v,2)", "v")],
            )
            .unwrap();
            PointedMap::from_pointed(m, &p, &f3).unwrap()
        };
        let fa = to("a", "b1");
        let fb = to("b", "b1");
        assert!(homotopic_maps(&fa, &fa).unwrap());
        assert!(homotopic_maps(&fa, &fb).unwrap());
        let f2 = fig2();
        let m = TsMap::from_names(
            p.ts.clone(),
            f2.ts.clone(),
            &[("0", "*"), ("1", "b1"), ("2", "a")],
            &[("(u,1)", "u"), ("(v,2)", "v")],
        )
        .unwrap();
        let g = PointedMap::from_pointed(m, &p, &f2).unwrap();
        assert_eq!(homotopic_maps(&g, &g), Err(Error::NotFibrant("homotopic_maps")));
    }
}
