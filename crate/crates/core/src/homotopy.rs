//! Cylinder and path objects in closed form, plain and pointed.
//!
//! The cylinder doubles the external states and keeps one copy of each
//! internal state:
//!
//! * states `Int × {0} ⊔ Ext × {0, 1}`, actions unchanged;
//! * `((α,ε), u1..un, (β,ε'))` is a transition iff `(α, u1..un, β)` is one,
//!   with the flag of an internal endpoint forced to 0.
//!
//! The path object has all pairs of states, and
//! `((α⁻,α⁺), u1..un, (β⁻,β⁺))` is a transition iff all four tuples
//! `(α^±, u1..un, β^±)` are transitions.

use std::collections::{BTreeMap, BTreeSet};

use crate::axioms::{class_of, intermediates, SystemClass, TargetIndex};
use crate::error::{Error, Result};
use crate::star::{is_star_shaped, star_coreflect, PointedTs};
use crate::system::{ActionId, StateId, Transition, TransitionSystem, TsMap};

/// A cylinder with its two inclusions and its projection.
#[derive(Clone, Debug)]
pub struct CylinderResult {
    pub cyl: TransitionSystem,
    pub gamma0: TsMap,
    pub gamma1: TsMap,
    pub sigma: TsMap,
    /// `(*, 0)` for the pointed cylinder.
    pub base: Option<StateId>,
}

/// A path object with its diagonal and its two projections.
#[derive(Clone, Debug)]
pub struct PathResult {
    pub cocyl: TransitionSystem,
    pub tau: TsMap,
    pub pi0: TsMap,
    pub pi1: TsMap,
    /// `(*, *)` for the pointed variants.
    pub base: Option<StateId>,
}

fn require_cs(ts: &TransitionSystem, operation: &'static str) -> Result<()> {
    let found = class_of(ts);
    if found != SystemClass::CattaniSassone {
        return Err(Error::WrongClass {
            operation,
            required: SystemClass::CattaniSassone,
            found,
        });
    }
    Ok(())
}

/// States that split some 2-transition.
pub fn internal_states(ts: &TransitionSystem) -> BTreeSet<StateId> {
    let set = ts.transitions();
    let index = TargetIndex::new(set);
    set.iter()
        .filter(|t| t.dim() == 2)
        .flat_map(|t| intermediates(&index, set, t, 1))
        .collect()
}

pub fn external_states(ts: &TransitionSystem) -> BTreeSet<StateId> {
    let int = internal_states(ts);
    ts.states().filter(|s| !int.contains(s)).collect()
}

fn flagged(name: &str, flag: u8) -> String {
    format!("({name},{flag})")
}

fn paired(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

fn build_cylinder(ts: &TransitionSystem, internal: &BTreeSet<StateId>) -> CylinderResult {
    let mut names = Vec::new();
    // position of (α, ε) in `names`; internal states only get ε = 0
    let mut pos: Vec<[usize; 2]> = Vec::with_capacity(ts.state_count());
    for s in ts.states() {
        let p0 = names.len();
        names.push(flagged(ts.state_name(s), 0));
        if internal.contains(&s) {
            pos.push([p0, p0]);
        } else {
            names.push(flagged(ts.state_name(s), 1));
            pos.push([p0, p0 + 1]);
        }
    }
    let flags = |s: StateId| -> &[u8] {
        if internal.contains(&s) {
            &[0]
        } else {
            &[0, 1]
        }
    };
    let mut trans = Vec::new();
    for t in ts.transitions() {
        for &e0 in flags(t.source) {
            for &e1 in flags(t.target) {
                trans.push((
                    pos[t.source.index()][e0 as usize],
                    t.actions.iter().map(|a| a.index()).collect(),
                    pos[t.target.index()][e1 as usize],
                ));
            }
        }
    }
    let actions = ts
        .actions()
        .map(|a| (ts.action_name(a).to_string(), ts.label(a).clone()))
        .collect();
    let asm = TransitionSystem::assemble(names, actions, trans).expect("cylinder tables are well formed");
    let cyl = asm.system;
    let amap: Vec<ActionId> = ts.actions().map(|a| asm.actions[a.index()]).collect();
    let gamma = |e: usize| {
        TsMap::new(
            ts.clone(),
            cyl.clone(),
            ts.states().map(|s| asm.states[pos[s.index()][e]]).collect(),
            amap.clone(),
        )
        .expect("cylinder inclusion is a map")
    };
    let gamma0 = gamma(0);
    let gamma1 = gamma(1);
    let mut back = vec![StateId(0); cyl.state_count()];
    for s in ts.states() {
        for e in 0..2 {
            back[asm.states[pos[s.index()][e]].index()] = s;
        }
    }
    let mut aback = vec![ActionId(0); cyl.action_count()];
    for a in ts.actions() {
        aback[amap[a.index()].index()] = a;
    }
    let sigma = TsMap::new(cyl.clone(), ts.clone(), back, aback).expect("cylinder projection is a map");
    CylinderResult {
        cyl,
        gamma0,
        gamma1,
        sigma,
        base: None,
    }
}

pub fn cyl_csts(ts: &TransitionSystem) -> Result<CylinderResult> {
    require_cs(ts, "cyl_csts")?;
    Ok(build_cylinder(ts, &internal_states(ts)))
}

/// The pointed cylinder: the base is treated as internal and `(*, 0)` is the base.
pub fn cyl_pointed(pts: &PointedTs) -> Result<CylinderResult> {
    require_cs(&pts.ts, "cyl_pointed")?;
    let mut internal = internal_states(&pts.ts);
    internal.insert(pts.base);
    let mut out = build_cylinder(&pts.ts, &internal);
    out.base = Some(out.gamma0.state(pts.base));
    Ok(out)
}

fn build_cocyl(ts: &TransitionSystem) -> PathResult {
    let n = ts.state_count();
    let names: Vec<String> = ts
        .states()
        .flat_map(|a| ts.states().map(move |b| (a, b)))
        .map(|(a, b)| paired(ts.state_name(a), ts.state_name(b)))
        .collect();
    let pair = |a: StateId, b: StateId| a.index() * n + b.index();
    let mut by_word: BTreeMap<&[ActionId], Vec<&Transition>> = BTreeMap::new();
    for t in ts.transitions() {
        by_word.entry(&t.actions).or_default().push(t);
    }
    let mut trans = Vec::new();
    for (word, group) in &by_word {
        for lo in group {
            for hi in group {
                if ts.has(lo.source, word, hi.target) && ts.has(hi.source, word, lo.target) {
                    trans.push((
                        pair(lo.source, hi.source),
                        word.iter().map(|a| a.index()).collect(),
                        pair(lo.target, hi.target),
                    ));
                }
            }
        }
    }
    let actions = ts
        .actions()
        .map(|a| (ts.action_name(a).to_string(), ts.label(a).clone()))
        .collect();
    let asm = TransitionSystem::assemble(names, actions, trans).expect("path object tables are well formed");
    let cocyl = asm.system;
    let amap: Vec<ActionId> = ts.actions().map(|a| asm.actions[a.index()]).collect();
    let tau = TsMap::new(
        ts.clone(),
        cocyl.clone(),
        ts.states().map(|s| asm.states[pair(s, s)]).collect(),
        amap.clone(),
    )
    .expect("diagonal is a map");
    let mut first = vec![StateId(0); cocyl.state_count()];
    let mut second = vec![StateId(0); cocyl.state_count()];
    for a in ts.states() {
        for b in ts.states() {
            let p = asm.states[pair(a, b)].index();
            first[p] = a;
            second[p] = b;
        }
    }
    let mut aback = vec![ActionId(0); cocyl.action_count()];
    for a in ts.actions() {
        aback[amap[a.index()].index()] = a;
    }
    let pi0 = TsMap::new(cocyl.clone(), ts.clone(), first, aback.clone()).expect("projection is a map");
    let pi1 = TsMap::new(cocyl.clone(), ts.clone(), second, aback).expect("projection is a map");
    PathResult {
        cocyl,
        tau,
        pi0,
        pi1,
        base: None,
    }
}

pub fn cocyl_csts(ts: &TransitionSystem) -> Result<PathResult> {
    require_cs(ts, "cocyl_csts")?;
    Ok(build_cocyl(ts))
}

/// The pointed path object based at `(*, *)`, before the star-shaped coreflection.
pub fn cocyl_pointed(pts: &PointedTs) -> Result<PathResult> {
    require_cs(&pts.ts, "cocyl_pointed")?;
    let mut out = build_cocyl(&pts.ts);
    out.base = Some(out.tau.state(pts.base));
    Ok(out)
}

/// The star-shaped path object: the part of the pointed path object reachable
/// from `(*, *)`. Its states are the past-similar pairs.
pub fn cocyl_star(pts: &PointedTs) -> Result<PathResult> {
    if !is_star_shaped(pts) {
        return Err(Error::NotStarShaped("cocyl_star"));
    }
    let full = cocyl_pointed(pts)?;
    let (sub, incl) = star_coreflect(&PointedTs::new(full.cocyl.clone(), full.base.unwrap())?);
    let restrict = |m: &TsMap| incl.map.then(m).expect("inclusion composes");
    let pi0 = restrict(&full.pi0);
    let pi1 = restrict(&full.pi1);
    let ts = &pts.ts;
    let tau_states = ts
        .states()
        .map(|s| sub.ts.expect_state(&paired(ts.state_name(s), ts.state_name(s))))
        .collect::<Result<Vec<_>>>()?;
    let tau_actions = ts
        .actions()
        .map(|a| sub.ts.expect_action(ts.action_name(a)))
        .collect::<Result<Vec<_>>>()?;
    let tau = TsMap::new(ts.clone(), sub.ts.clone(), tau_states, tau_actions)?;
    Ok(PathResult {
        cocyl: sub.ts,
        tau,
        pi0,
        pi1,
        base: Some(sub.base),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::classify;
    use crate::builders::{cube, discrete, double, path, Word};
    use crate::system::Label;

    fn labels(s: &str) -> Vec<Label> {
        s.chars().map(Label::from).collect()
    }

    fn names(ts: &TransitionSystem, set: &BTreeSet<StateId>) -> Vec<String> {
        set.iter().map(|&s| ts.state_name(s).to_string()).collect()
    }

    #[test]
    fn internal_examples() {
        let c = cube(&labels("uv"));
        assert_eq!(names(&c, &internal_states(&c)), ["01", "10"]);
        assert_eq!(names(&c, &external_states(&c)), ["00", "11"]);
        assert!(internal_states(&path(&Word::from_letters("uvw")).ts).is_empty());
        assert!(internal_states(&double("x")).is_empty());
    }

    fn check_cylinder(r: &CylinderResult, x: &TransitionSystem) {
        assert!(r.gamma0.then(&r.sigma).unwrap().is_identity());
        assert!(r.gamma1.then(&r.sigma).unwrap().is_identity());
        assert_eq!(r.sigma.target(), x);
    }

    fn check_path(r: &PathResult, x: &TransitionSystem) {
        assert!(r.tau.then(&r.pi0).unwrap().is_identity());
        assert!(r.tau.then(&r.pi1).unwrap().is_identity());
        assert_eq!(r.tau.source(), x);
    }

    #[test]
    fn cylinder_examples() {
        let c = cube(&labels("uv"));
        let r = cyl_csts(&c).unwrap();
        assert_eq!((r.cyl.state_count(), r.cyl.action_count()), (6, 2));
        check_cylinder(&r, &c);
        let d = discrete(["a"]);
        assert_eq!(cyl_csts(&d).unwrap().cyl.state_count(), 2);
        let p = path(&Word::from_letters("u")).ts;
        let r = cyl_csts(&p).unwrap();
        assert_eq!((r.cyl.state_count(), r.cyl.action_count(), r.cyl.transition_count()), (4, 1, 4));
        assert_eq!(classify(&r.cyl).class, SystemClass::CattaniSassone);
    }

    #[test]
    fn pointed_cylinder_examples() {
        let p = path(&Word::from_letters("u"));
        let r = cyl_pointed(&p).unwrap();
        assert_eq!(r.cyl.state_names(), ["(0,0)", "(1,0)", "(1,1)"]);
        assert_eq!(r.cyl.state_name(r.base.unwrap()), "(0,0)");
        check_cylinder(&r, &p.ts);
        let pt = PointedTs::point("*");
        assert_eq!(cyl_pointed(&pt).unwrap().cyl.state_count(), 1);
    }

    #[test]
    fn path_object_examples() {
        let c = cube(&labels("u"));
        let r = cocyl_csts(&c).unwrap();
        assert_eq!((r.cocyl.state_count(), r.cocyl.action_count(), r.cocyl.transition_count()), (4, 1, 1));
        assert!(r.cocyl.has(r.cocyl.state("(0,0)").unwrap(), &[ActionId(0)], r.cocyl.state("(1,1)").unwrap()));
        check_path(&r, &c);
        let d = discrete(["a", "b", "c"]);
        let r = cocyl_csts(&d).unwrap();
        assert_eq!((r.cocyl.state_count(), r.cocyl.transition_count()), (9, 0));
        let sq = cube(&labels("uv"));
        let r = cocyl_csts(&sq).unwrap();
        check_path(&r, &sq);
        assert_eq!(classify(&r.cocyl).class, SystemClass::CattaniSassone);
    }

    #[test]
    fn star_path_object_of_a_path() {
        let p = path(&Word::from_letters("u"));
        let r = cocyl_star(&p).unwrap();
        assert_eq!(r.cocyl.state_names(), ["(0,0)", "(1,1)"]);
        check_path(&r, &p.ts);
        let d = PointedTs::with_base_name(discrete(["a", "b"]), "a").unwrap();
        assert_eq!(cocyl_star(&d).unwrap_err(), Error::NotStarShaped("cocyl_star"));
    }

    #[test]
    fn non_cs_input_is_rejected() {
        let pure = crate::builders::pure(&labels("uv"));
        assert!(matches!(cyl_csts(&pure), Err(Error::WrongClass { .. })));
        assert!(matches!(cocyl_csts(&pure), Err(Error::WrongClass { .. })));
    }
}
