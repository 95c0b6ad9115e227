//! Closure of transition sets under the multiset and patching axioms, final
//! lifts along onto maps, and quotients.
//!
//! The patching closure is a naive fixpoint: each round enumerates every
//! premise instance `(outer, p, q, ν1, ν2)` and adds the missing patches. A
//! round costs roughly `Σ n² · k²` lookups for transitions of dimension `n`
//! with at most `k` intermediates per split, which is fine for systems with a
//! few thousand transitions. Patches are built from existing states and
//! shorter action lists, so the universe is finite and the loop stops.

use std::collections::BTreeSet;

use crate::axioms::{distinct_permutations, patch_instances, TargetIndex};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::system::{ActionId, StateId, Transition, TransitionSystem, TsMap};

pub fn multiset_closure(transitions: &BTreeSet<Transition>) -> BTreeSet<Transition> {
    let mut out = transitions.clone();
    for t in transitions.iter().filter(|t| t.dim() >= 2) {
        for perm in distinct_permutations(&t.actions) {
            out.insert(Transition::new(t.source, perm, t.target));
        }
    }
    out
}

pub fn patching_closure(transitions: &BTreeSet<Transition>) -> BTreeSet<Transition> {
    let mut set = transitions.clone();
    let mut index = TargetIndex::new(&set);
    loop {
        let mut fresh = Vec::new();
        for t in set.iter().filter(|t| t.dim() >= 3) {
            for inst in patch_instances(&index, &set, t) {
                if !set.contains(&inst.missing) {
                    fresh.push(inst.missing);
                }
            }
        }
        if fresh.is_empty() {
            return set;
        }
        for t in fresh {
            if set.insert(t.clone()) {
                index.insert(&t);
            }
        }
    }
}

/// The least superset closed under both the multiset and patching rules.
pub fn weak_closure(transitions: &BTreeSet<Transition>) -> BTreeSet<Transition> {
    let mut set = transitions.clone();
    loop {
        let next = patching_closure(&multiset_closure(&set));
        if next.len() == set.len() {
            return set;
        }
        set = next;
    }
}

/// Pushes the transitions of `ts` along the given onto maps into the carrier
/// of `carrier` (whose own transitions are ignored) and closes the image.
pub fn final_lift(
    ts: &TransitionSystem,
    carrier: &TransitionSystem,
    states: &[StateId],
    actions: &[ActionId],
) -> Result<TransitionSystem> {
    if states.len() != ts.state_count() {
        return Err(Error::SizeMismatch {
            what: "state",
            expected: ts.state_count(),
            found: states.len(),
        });
    }
    if actions.len() != ts.action_count() {
        return Err(Error::SizeMismatch {
            what: "action",
            expected: ts.action_count(),
            found: actions.len(),
        });
    }
    let mut hit_states = vec![false; carrier.state_count()];
    for s in states {
        *hit_states
            .get_mut(s.index())
            .ok_or(Error::StateOutOfRange(s.index()))? = true;
    }
    if let Some(i) = hit_states.iter().position(|h| !h) {
        return Err(Error::NotSurjective {
            what: "state",
            missing: carrier.state_name(StateId(i as u32)).to_string(),
        });
    }
    let mut hit_actions = vec![false; carrier.action_count()];
    for (i, a) in actions.iter().enumerate() {
        *hit_actions
            .get_mut(a.index())
            .ok_or(Error::ActionOutOfRange(a.index()))? = true;
        let src = ActionId(i as u32);
        if ts.label(src) != carrier.label(*a) {
            return Err(Error::LabelMismatch {
                action: ts.action_name(src).to_string(),
                source_label: ts.label(src).to_string(),
                image: carrier.action_name(*a).to_string(),
                image_label: carrier.label(*a).to_string(),
            });
        }
    }
    if let Some(i) = hit_actions.iter().position(|h| !h) {
        return Err(Error::NotSurjective {
            what: "action",
            missing: carrier.action_name(ActionId(i as u32)).to_string(),
        });
    }
    let image: BTreeSet<Transition> = ts
        .transitions()
        .iter()
        .map(|t| {
            Transition::new(
                states[t.source.index()],
                t.actions.iter().map(|a| actions[a.index()]).collect(),
                states[t.target.index()],
            )
        })
        .collect();
    carrier.with_transitions(weak_closure(&image))
}

/// Quotient by the given partitions, named after the least member of each
/// block. Returns the quotient and the projection.
pub fn quotient(
    ts: &TransitionSystem,
    states: &Partition,
    actions: &Partition,
) -> Result<(TransitionSystem, TsMap)> {
    if states.len() != ts.state_count() {
        return Err(Error::SizeMismatch {
            what: "state partition",
            expected: ts.state_count(),
            found: states.len(),
        });
    }
    if actions.len() != ts.action_count() {
        return Err(Error::SizeMismatch {
            what: "action partition",
            expected: ts.action_count(),
            found: actions.len(),
        });
    }
    let state_blocks = states.blocks();
    let action_blocks = actions.blocks();
    for block in &action_blocks {
        let first = ActionId(block[0] as u32);
        for &other in &block[1..] {
            let other = ActionId(other as u32);
            if ts.label(first) != ts.label(other) {
                return Err(Error::MixedLabelBlock(
                    ts.action_name(first).to_string(),
                    ts.action_name(other).to_string(),
                ));
            }
        }
    }
    let carrier = TransitionSystem::assemble(
        state_blocks
            .iter()
            .map(|b| ts.state_name(StateId(b[0] as u32)).to_string())
            .collect(),
        action_blocks
            .iter()
            .map(|b| {
                let a = ActionId(b[0] as u32);
                (ts.action_name(a).to_string(), ts.label(a).clone())
            })
            .collect(),
        std::iter::empty(),
    )?;
    let mut smap = vec![StateId(0); ts.state_count()];
    for (i, block) in state_blocks.iter().enumerate() {
        for &m in block {
            smap[m] = carrier.states[i];
        }
    }
    let mut amap = vec![ActionId(0); ts.action_count()];
    for (i, block) in action_blocks.iter().enumerate() {
        for &m in block {
            amap[m] = carrier.actions[i];
        }
    }
    let lifted = final_lift(ts, &carrier.system, &smap, &amap)?;
    let proj = TsMap::new(ts.clone(), lifted.clone(), smap, amap)?;
    Ok((lifted, proj))
}
