//! Coproducts, pushouts and wedges of Cattani-Sassone systems.
//!
//! Other finite colimits can be assembled from these: a coequalizer of
//! `f, g : A → X` is the pushout of `[id, id] : A ⊔ A → A` along
//! `[f, g] : A ⊔ A → X`.
//!
//! Names in a coproduct are prefixed with the summand index (`0.a`, `1.a`);
//! quotients keep the least name of each block.

use std::collections::BTreeSet;

use crate::closure::quotient;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::reflections::cs_reflect;
use crate::star::{PointedMap, PointedTs};
use crate::system::{ActionId, StateId, Transition, TransitionSystem, TsMap};

pub fn coproduct(xs: &[TransitionSystem]) -> (TransitionSystem, Vec<TsMap>) {
    let mut states = Vec::new();
    let mut actions = Vec::new();
    let mut trans = Vec::new();
    let mut offsets = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        let so = states.len();
        let ao = actions.len();
        offsets.push((so, ao));
        states.extend(x.states().map(|s| format!("{i}.{}", x.state_name(s))));
        actions.extend(
            x.actions()
                .map(|a| (format!("{i}.{}", x.action_name(a)), x.label(a).clone())),
        );
        trans.extend(x.transitions().iter().map(|t| {
            (
                so + t.source.index(),
                t.actions.iter().map(|a| ao + a.index()).collect(),
                so + t.target.index(),
            )
        }));
    }
    let asm = TransitionSystem::assemble(states, actions, trans).expect("prefixed names are distinct");
    let injections = xs
        .iter()
        .zip(&offsets)
        .map(|(x, &(so, ao))| {
            TsMap::new(
                x.clone(),
                asm.system.clone(),
                x.states().map(|s| asm.states[so + s.index()]).collect(),
                x.actions().map(|a| asm.actions[ao + a.index()]).collect(),
            )
            .expect("injections are maps")
        })
        .collect();
    (asm.system, injections)
}

/// A pushout square completed by `left : X → Y` and `right : B → Y`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: TransitionSystem,
    pub left: TsMap,
    pub right: TsMap,
}

impl Pushout {
    /// Every transition of the pushout is the image of a transition of one leg.
    pub fn transitions_are_images(&self) -> bool {
        let images: BTreeSet<Transition> = self
            .left
            .source()
            .transitions()
            .iter()
            .map(|t| self.left.apply(t))
            .chain(self.right.source().transitions().iter().map(|t| self.right.apply(t)))
            .collect();
        &images == self.object.transitions()
    }
}

fn glue(
    x: &TransitionSystem,
    b: &TransitionSystem,
    state_pairs: &[(StateId, StateId)],
    action_pairs: &[(ActionId, ActionId)],
) -> Result<Pushout> {
    let (sum, inj) = coproduct(&[x.clone(), b.clone()]);
    let mut states = Partition::discrete(sum.state_count());
    for &(s, t) in state_pairs {
        states.union(inj[0].state(s).index(), inj[1].state(t).index());
    }
    let mut actions = Partition::discrete(sum.action_count());
    for &(u, v) in action_pairs {
        actions.union(inj[0].action(u).index(), inj[1].action(v).index());
    }
    let (q, proj) = quotient(&sum, &states, &actions)?;
    let (y, unit) = cs_reflect(&q)?;
    let to_y = proj.then(&unit)?;
    let out = Pushout {
        object: y,
        left: inj[0].then(&to_y)?,
        right: inj[1].then(&to_y)?,
    };
    if !out.transitions_are_images() {
        return Err(Error::Internal(
            "pushout has a transition that is not the image of an input transition".into(),
        ));
    }
    Ok(out)
}

/// The pushout of `f : A → X` and `g : A → B`.
pub fn pushout(f: &TsMap, g: &TsMap) -> Result<Pushout> {
    if f.source() != g.source() {
        return Err(Error::MismatchedDomains);
    }
    let a = f.source();
    let state_pairs: Vec<_> = a.states().map(|s| (f.state(s), g.state(s))).collect();
    let action_pairs: Vec<_> = a.actions().map(|u| (f.action(u), g.action(u))).collect();
    glue(f.target(), g.target(), &state_pairs, &action_pairs)
}

/// Pointed pushout: as [`pushout`], based at the common image of the bases.
pub fn pointed_pushout(
    f: &PointedMap,
    g: &PointedMap,
) -> Result<(PointedTs, PointedMap, PointedMap)> {
    if f.map.source() != g.map.source() || f.source_base != g.source_base {
        return Err(Error::MismatchedDomains);
    }
    let p = pushout(&f.map, &g.map)?;
    let base = p.left.state(f.target_base);
    let obj = PointedTs::new(p.object, base)?;
    let left = PointedMap::new(p.left, f.target_base, base)?;
    let right = PointedMap::new(p.right, g.target_base, base)?;
    Ok((obj, left, right))
}

/// The pointed coproduct: disjoint union with all base states identified.
pub fn wedge(xs: &[PointedTs]) -> Result<(PointedTs, Vec<PointedMap>)> {
    if xs.is_empty() {
        return Ok((PointedTs::point("*"), Vec::new()));
    }
    let systems: Vec<TransitionSystem> = xs.iter().map(|p| p.ts.clone()).collect();
    let (sum, inj) = coproduct(&systems);
    let mut states = Partition::discrete(sum.state_count());
    let first = inj[0].state(xs[0].base).index();
    for (p, i) in xs.iter().zip(&inj) {
        states.union(first, i.state(p.base).index());
    }
    let (q, proj) = quotient(&sum, &states, &Partition::discrete(sum.action_count()))?;
    let (y, unit) = cs_reflect(&q)?;
    let to_y = proj.then(&unit)?;
    let base = to_y.state(inj[0].state(xs[0].base));
    let maps = xs
        .iter()
        .zip(inj)
        .map(|(p, i)| PointedMap::new(i.then(&to_y)?, p.base, base))
        .collect::<Result<Vec<_>>>()?;
    Ok((PointedTs::new(y, base)?, maps))
}
