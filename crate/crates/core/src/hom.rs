//! Exhaustive enumeration of maps between small systems, and isomorphism
//! search. Backtracking assigns states and actions in the order they first
//! occur in the transitions (low dimensions first) and checks each transition
//! as soon as all of its entries are assigned.

use std::ops::ControlFlow;

use crate::star::{PointedMap, PointedTs};
use crate::system::{ActionId, StateId, TransitionSystem, TsMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Var {
    State(usize),
    Action(usize),
}

struct Search<'a> {
    src: &'a TransitionSystem,
    dst: &'a TransitionSystem,
    injective: bool,
    order: Vec<Var>,
    checks: Vec<Vec<usize>>,
    transitions: Vec<&'a crate::system::Transition>,
    state_domain: Vec<Vec<StateId>>,
    action_domain: Vec<Vec<ActionId>>,
    states: Vec<Option<StateId>>,
    actions: Vec<Option<ActionId>>,
    used_states: Vec<bool>,
    used_actions: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(
        src: &'a TransitionSystem,
        dst: &'a TransitionSystem,
        injective: bool,
        fixed: &[(StateId, StateId)],
    ) -> Self {
        let mut transitions: Vec<_> = src.transitions().iter().collect();
        transitions.sort_by_key(|t| t.dim());
        let mut order = Vec::new();
        let mut seen_s = vec![false; src.state_count()];
        let mut seen_a = vec![false; src.action_count()];
        let mut push_s = |s: StateId, order: &mut Vec<Var>| {
            if !seen_s[s.index()] {
                seen_s[s.index()] = true;
                order.push(Var::State(s.index()));
            }
        };
        for &(s, _) in fixed {
            push_s(s, &mut order);
        }
        for t in &transitions {
            push_s(t.source, &mut order);
            for a in &t.actions {
                if !seen_a[a.index()] {
                    seen_a[a.index()] = true;
                    order.push(Var::Action(a.index()));
                }
            }
            push_s(t.target, &mut order);
        }
        for s in src.states() {
            push_s(s, &mut order);
        }
        for a in src.actions() {
            if !seen_a[a.index()] {
                seen_a[a.index()] = true;
                order.push(Var::Action(a.index()));
            }
        }
        let mut pos_s = vec![0; src.state_count()];
        let mut pos_a = vec![0; src.action_count()];
        for (i, v) in order.iter().enumerate() {
            match *v {
                Var::State(s) => pos_s[s] = i,
                Var::Action(a) => pos_a[a] = i,
            }
        }
        let mut checks = vec![Vec::new(); order.len()];
        for (ti, t) in transitions.iter().enumerate() {
            let last = t
                .actions
                .iter()
                .map(|a| pos_a[a.index()])
                .chain([pos_s[t.source.index()], pos_s[t.target.index()]])
                .max()
                .unwrap();
            checks[last].push(ti);
        }
        let mut state_domain: Vec<Vec<StateId>> = vec![dst.states().collect(); src.state_count()];
        for &(s, d) in fixed {
            state_domain[s.index()] = vec![d];
        }
        let action_domain = src
            .actions()
            .map(|a| dst.actions().filter(|&b| dst.label(b) == src.label(a)).collect())
            .collect();
        Search {
            src,
            dst,
            injective,
            order,
            checks,
            transitions,
            state_domain,
            action_domain,
            states: vec![None; src.state_count()],
            actions: vec![None; src.action_count()],
            used_states: vec![false; dst.state_count()],
            used_actions: vec![false; dst.action_count()],
        }
    }

    fn consistent(&self, depth: usize) -> bool {
        self.checks[depth].iter().all(|&ti| {
            let t = self.transitions[ti];
            let img = crate::system::Transition::new(
                self.states[t.source.index()].unwrap(),
                t.actions.iter().map(|a| self.actions[a.index()].unwrap()).collect(),
                self.states[t.target.index()].unwrap(),
            );
            self.dst.contains(&img)
        })
    }

    fn run<F: FnMut(&[StateId], &[ActionId]) -> ControlFlow<()>>(
        &mut self,
        depth: usize,
        f: &mut F,
    ) -> ControlFlow<()> {
        if depth == self.order.len() {
            let s: Vec<StateId> = self.states.iter().map(|x| x.unwrap()).collect();
            let a: Vec<ActionId> = self.actions.iter().map(|x| x.unwrap()).collect();
            return f(&s, &a);
        }
        match self.order[depth] {
            Var::State(i) => {
                for k in 0..self.state_domain[i].len() {
                    let d = self.state_domain[i][k];
                    if self.injective && self.used_states[d.index()] {
                        continue;
                    }
                    self.states[i] = Some(d);
                    self.used_states[d.index()] = true;
                    if self.consistent(depth) {
                        self.run(depth + 1, f)?;
                    }
                    self.used_states[d.index()] = false;
                    self.states[i] = None;
                }
            }
            Var::Action(i) => {
                for k in 0..self.action_domain[i].len() {
                    let d = self.action_domain[i][k];
                    if self.injective && self.used_actions[d.index()] {
                        continue;
                    }
                    self.actions[i] = Some(d);
                    self.used_actions[d.index()] = true;
                    if self.consistent(depth) {
                        self.run(depth + 1, f)?;
                    }
                    self.used_actions[d.index()] = false;
                    self.actions[i] = None;
                }
            }
        }
        ControlFlow::Continue(())
    }

    fn finish(&self, s: &[StateId], a: &[ActionId]) -> TsMap {
        TsMap::new(self.src.clone(), self.dst.clone(), s.to_vec(), a.to_vec())
            .expect("search only yields maps")
    }
}

/// Calls `f` on every map `src → dst` sending each `(s, d)` in `fixed` to `d`
/// as the state image of `s`, until `f` breaks.
pub fn for_each_map<F>(
    src: &TransitionSystem,
    dst: &TransitionSystem,
    fixed: &[(StateId, StateId)],
    injective: bool,
    mut f: F,
) where
    F: FnMut(&[StateId], &[ActionId]) -> ControlFlow<()>,
{
    let mut search = Search::new(src, dst, injective, fixed);
    let _ = search.run(0, &mut f);
}

pub fn enumerate_maps(src: &TransitionSystem, dst: &TransitionSystem) -> Vec<TsMap> {
    let search = Search::new(src, dst, false, &[]);
    let mut out = Vec::new();
    for_each_map(src, dst, &[], false, |s, a| {
        out.push(search.finish(s, a));
        ControlFlow::Continue(())
    });
    out
}

pub fn count_maps(src: &TransitionSystem, dst: &TransitionSystem) -> usize {
    let mut n = 0;
    for_each_map(src, dst, &[], false, |_, _| {
        n += 1;
        ControlFlow::Continue(())
    });
    n
}

pub fn count_pointed_maps(src: &PointedTs, dst: &PointedTs) -> usize {
    let mut n = 0;
    for_each_map(&src.ts, &dst.ts, &[(src.base, dst.base)], false, |_, _| {
        n += 1;
        ControlFlow::Continue(())
    });
    n
}

fn iso_search(a: &TransitionSystem, b: &TransitionSystem, fixed: &[(StateId, StateId)]) -> Option<TsMap> {
    if a.state_count() != b.state_count()
        || a.action_count() != b.action_count()
        || a.transition_count() != b.transition_count()
    {
        return None;
    }
    let search = Search::new(a, b, true, fixed);
    let mut found = None;
    for_each_map(a, b, fixed, true, |s, acts| {
        found = Some(search.finish(s, acts));
        ControlFlow::Break(())
    });
    found
}

/// An isomorphism `a → b`, if one exists.
pub fn find_isomorphism(a: &TransitionSystem, b: &TransitionSystem) -> Option<TsMap> {
    iso_search(a, b, &[])
}

pub fn is_isomorphic(a: &TransitionSystem, b: &TransitionSystem) -> bool {
    find_isomorphism(a, b).is_some()
}

pub fn find_pointed_isomorphism(a: &PointedTs, b: &PointedTs) -> Option<PointedMap> {
    let map = iso_search(&a.ts, &b.ts, &[(a.base, b.base)])?;
    Some(PointedMap::new(map, a.base, b.base).expect("base is fixed"))
}

pub fn is_pointed_isomorphic(a: &PointedTs, b: &PointedTs) -> bool {
    find_pointed_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{cube, double, pure};
    use crate::system::Label;

    fn labels(s: &str) -> Vec<Label> {
        s.chars().map(Label::from).collect()
    }

    #[test]
    fn pure_into_cube_factors_once() {
        assert_eq!(count_maps(&pure(&labels("xy")), &cube(&labels("xy"))), 1);
    }

    #[test]
    fn small_counts() {
        // a 1-transition maps onto either copy of the double transition
        assert_eq!(count_maps(&cube(&labels("x")), &double("x")), 2);
        assert_eq!(count_maps(&cube(&labels("x")), &cube(&labels("y"))), 0);
        assert_eq!(count_maps(&TransitionSystem::empty(), &double("x")), 1);
        // the square has a single 2-dimensional transition pair; its sides map in one way
        assert_eq!(count_maps(&cube(&labels("xy")), &cube(&labels("xy"))), 1);
        assert_eq!(count_maps(&cube(&labels("xx")), &cube(&labels("xx"))), 2);
    }

    #[test]
    fn isomorphism_detection() {
        let a = cube(&labels("xy"));
        let b = cube(&labels("yx"));
        assert!(is_isomorphic(&a, &b));
        assert!(find_isomorphism(&a, &b).unwrap().is_isomorphism());
        assert!(!is_isomorphic(&a, &cube(&labels("xz"))));
        assert!(!is_isomorphic(&double("x"), &cube(&labels("x"))));
    }
}
