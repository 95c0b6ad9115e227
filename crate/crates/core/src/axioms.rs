//! Axiom predicates and classification.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::system::{ActionId, StateId, Transition, TransitionSystem, TsMap};

/// The classes of systems, ordered from weakest to strongest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemClass {
    None,
    Weak,
    Cubical,
    Regular,
    CattaniSassone,
}

impl fmt::Display for SystemClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemClass::None => "none",
            SystemClass::Weak => "weak",
            SystemClass::Cubical => "cubical",
            SystemClass::Regular => "regular",
            SystemClass::CattaniSassone => "cattani_sassone",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub multiset: bool,
    pub patching: bool,
    pub all_actions_used: bool,
    pub intermediate_state: bool,
    pub csa2: bool,
    pub csa1: bool,
    pub class: SystemClass,
}

/// A transition whose permuted action list is missing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MultisetViolation {
    pub transition: Transition,
    pub permuted: Vec<ActionId>,
}

/// One instance of the five patching premises whose patch is missing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PatchingViolation {
    pub outer: Transition,
    pub p: usize,
    pub q: usize,
    pub nu1: StateId,
    pub nu2: StateId,
    pub missing: Transition,
}

/// A split of `transition` after `p` actions admitting two intermediates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Csa2Violation {
    pub transition: Transition,
    pub p: usize,
    pub first: StateId,
    pub second: StateId,
}

/// Two distinct parallel 1-transitions with equal labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Csa1Violation {
    pub source: StateId,
    pub target: StateId,
    pub first: ActionId,
    pub second: ActionId,
}

/// A split of `transition` after `p` actions with no intermediate state.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IntermediateViolation {
    pub transition: Transition,
    pub p: usize,
}

/// Targets reachable from `(source, actions)`.
pub(crate) struct TargetIndex {
    map: HashMap<(StateId, Vec<ActionId>), Vec<StateId>>,
}

impl TargetIndex {
    pub(crate) fn new<'a>(transitions: impl IntoIterator<Item = &'a Transition>) -> Self {
        let mut map: HashMap<(StateId, Vec<ActionId>), Vec<StateId>> = HashMap::new();
        for t in transitions {
            map.entry((t.source, t.actions.clone()))
                .or_default()
                .push(t.target);
        }
        TargetIndex { map }
    }

    pub(crate) fn targets(&self, source: StateId, actions: &[ActionId]) -> &[StateId] {
        self.map
            .get(&(source, actions.to_vec()))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    pub(crate) fn insert(&mut self, t: &Transition) {
        self.map
            .entry((t.source, t.actions.clone()))
            .or_default()
            .push(t.target);
    }
}

/// States `ν` with `(α, u1..up, ν)` and `(ν, u(p+1)..un, β)` both transitions.
pub(crate) fn intermediates(
    index: &TargetIndex,
    set: &BTreeSet<Transition>,
    t: &Transition,
    p: usize,
) -> Vec<StateId> {
    let mut out: Vec<StateId> = index
        .targets(t.source, &t.actions[..p])
        .iter()
        .copied()
        .filter(|&nu| set.contains(&Transition::new(nu, t.actions[p..].to_vec(), t.target)))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// All distinct orderings of `items`.
pub fn distinct_permutations<T: Ord + Clone>(items: &[T]) -> Vec<Vec<T>> {
    let mut cur = items.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn check_multiset(ts: &TransitionSystem) -> Vec<MultisetViolation> {
    let mut out = Vec::new();
    for t in ts.transitions().iter().filter(|t| t.dim() >= 2) {
        for perm in distinct_permutations(&t.actions) {
            if !ts.has(t.source, &perm, t.target) {
                out.push(MultisetViolation {
                    transition: t.clone(),
                    permuted: perm,
                });
            }
        }
    }
    out
}

pub fn check_patching(ts: &TransitionSystem) -> Vec<PatchingViolation> {
    let set = ts.transitions();
    let index = TargetIndex::new(set);
    let mut out = Vec::new();
    for t in set.iter().filter(|t| t.dim() >= 3) {
        for inst in patch_instances(&index, set, t) {
            if !set.contains(&inst.missing) {
                out.push(inst);
            }
        }
    }
    out
}

/// Every premise instance of the patching rule with `t` as outer transition.
pub(crate) fn patch_instances(
    index: &TargetIndex,
    set: &BTreeSet<Transition>,
    t: &Transition,
) -> Vec<PatchingViolation> {
    let n = t.dim();
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    let splits: Vec<Vec<StateId>> = (0..n)
        .map(|p| if p == 0 { Vec::new() } else { intermediates(index, set, t, p) })
        .collect();
    for p in 1..n {
        for q in 1..n - p {
            for &nu1 in &splits[p] {
                for &nu2 in &splits[p + q] {
                    out.push(PatchingViolation {
                        outer: t.clone(),
                        p,
                        q,
                        nu1,
                        nu2,
                        missing: Transition::new(nu1, t.actions[p..p + q].to_vec(), nu2),
                    });
                }
            }
        }
    }
    out
}

pub fn check_csa2(ts: &TransitionSystem) -> Vec<Csa2Violation> {
    let set = ts.transitions();
    let index = TargetIndex::new(set);
    let mut out = Vec::new();
    for t in set.iter().filter(|t| t.dim() >= 2) {
        for p in 1..t.dim() {
            let nus = intermediates(&index, set, t, p);
            for i in 0..nus.len() {
                for j in i + 1..nus.len() {
                    out.push(Csa2Violation {
                        transition: t.clone(),
                        p,
                        first: nus[i],
                        second: nus[j],
                    });
                }
            }
        }
    }
    out
}

pub fn check_csa1(ts: &TransitionSystem) -> Vec<Csa1Violation> {
    let mut parallel: HashMap<(StateId, StateId), Vec<ActionId>> = HashMap::new();
    for (s, a, t) in ts.one_transitions() {
        parallel.entry((s, t)).or_default().push(a);
    }
    let mut out = Vec::new();
    for ((source, target), acts) in parallel {
        for i in 0..acts.len() {
            for j in i + 1..acts.len() {
                if ts.label(acts[i]) == ts.label(acts[j]) {
                    out.push(Csa1Violation {
                        source,
                        target,
                        first: acts[i].min(acts[j]),
                        second: acts[i].max(acts[j]),
                    });
                }
            }
        }
    }
    out.sort();
    out
}

/// Actions with no 1-transition.
pub fn check_all_actions_used(ts: &TransitionSystem) -> BTreeSet<ActionId> {
    let used: BTreeSet<ActionId> = ts.one_transitions().map(|(_, a, _)| a).collect();
    ts.actions().filter(|a| !used.contains(a)).collect()
}

pub fn check_intermediate(ts: &TransitionSystem) -> Vec<IntermediateViolation> {
    let set = ts.transitions();
    let index = TargetIndex::new(set);
    let mut out = Vec::new();
    for t in set.iter().filter(|t| t.dim() >= 2) {
        for p in 1..t.dim() {
            if intermediates(&index, set, t, p).is_empty() {
                out.push(IntermediateViolation {
                    transition: t.clone(),
                    p,
                });
            }
        }
    }
    out
}

pub fn classify(ts: &TransitionSystem) -> Classification {
    let multiset = check_multiset(ts).is_empty();
    let patching = check_patching(ts).is_empty();
    let all_actions_used = check_all_actions_used(ts).is_empty();
    let intermediate_state = check_intermediate(ts).is_empty();
    // CSA2 asks for a unique intermediate, so existence is part of it.
    let csa2 = intermediate_state && check_csa2(ts).is_empty();
    let csa1 = check_csa1(ts).is_empty();
    let class = if !(multiset && patching) {
        SystemClass::None
    } else if !(all_actions_used && intermediate_state) {
        SystemClass::Weak
    } else if !csa2 {
        SystemClass::Cubical
    } else if !csa1 {
        SystemClass::Regular
    } else {
        SystemClass::CattaniSassone
    };
    Classification {
        multiset,
        patching,
        all_actions_used,
        intermediate_state,
        csa2,
        csa1,
        class,
    }
}

pub fn class_of(ts: &TransitionSystem) -> SystemClass {
    classify(ts).class
}

/// Injective on states and on actions.
pub fn is_mono(f: &TsMap) -> bool {
    f.is_injective_states() && f.is_injective_actions()
}
