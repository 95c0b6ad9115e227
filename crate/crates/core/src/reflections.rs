//! Reflections onto regular and Cattani-Sassone systems.
//!
//! Each round collects the current violations, merges them in a union-find,
//! and takes one final lift. Merging two states can create new splits with
//! two intermediates, and merging two actions can too, so the CSA1 reflection
//! also merges the intermediates it exposes. Without that step the result
//! would not be regular.

use crate::axioms::{check_csa1, check_csa2, class_of, SystemClass};
use crate::closure::quotient;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::system::{TransitionSystem, TsMap};

fn require(ts: &TransitionSystem, operation: &'static str, required: SystemClass) -> Result<()> {
    let found = class_of(ts);
    if found < required {
        return Err(Error::WrongClass {
            operation,
            required,
            found,
        });
    }
    Ok(())
}

fn fixpoint(ts: &TransitionSystem, merge_actions: bool) -> Result<(TransitionSystem, TsMap)> {
    let mut current = ts.clone();
    let mut unit = TsMap::identity(ts);
    loop {
        let mut states = Partition::discrete(current.state_count());
        let mut actions = Partition::discrete(current.action_count());
        let mut changed = false;
        for v in check_csa2(&current) {
            changed |= states.union(v.first.index(), v.second.index());
        }
        if merge_actions {
            for v in check_csa1(&current) {
                changed |= actions.union(v.first.index(), v.second.index());
            }
        }
        if !changed {
            return Ok((current, unit));
        }
        let (next, proj) = quotient(&current, &states, &actions)?;
        unit = unit.then(&proj)?;
        current = next;
    }
}

/// Forces unique intermediate states by identifying states.
pub fn csa2_reflect(ts: &TransitionSystem) -> Result<(TransitionSystem, TsMap)> {
    require(ts, "csa2_reflect", SystemClass::Cubical)?;
    fixpoint(ts, false)
}

/// Identifies parallel actions with equal labels.
pub fn csa1_reflect(ts: &TransitionSystem) -> Result<(TransitionSystem, TsMap)> {
    require(ts, "csa1_reflect", SystemClass::Regular)?;
    fixpoint(ts, true)
}

/// Both reflections, iterated to a joint fixpoint.
pub fn cs_reflect(ts: &TransitionSystem) -> Result<(TransitionSystem, TsMap)> {
    require(ts, "cs_reflect", SystemClass::Cubical)?;
    fixpoint(ts, true)
}
