//! Carrier data model: labelled actions, n-transitions, systems and maps.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};

/// A label drawn from an unbounded alphabet.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Label(String);

impl Label {
    pub fn new(symbol: impl Into<String>) -> Self {
        Label(symbol.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label(s.to_string())
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label(s)
    }
}

impl From<char> for Label {
    fn from(c: char) -> Self {
        Label(c.to_string())
    }
}

/// Index of a state inside its system's sorted state table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u32);

/// Index of an action inside its system's sorted action table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionId(pub u32);

impl StateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl ActionId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An n-transition `(source, u1 .. un, target)`; the order of the actions matters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub source: StateId,
    pub actions: Vec<ActionId>,
    pub target: StateId,
}

impl Transition {
    pub fn new(source: StateId, actions: Vec<ActionId>, target: StateId) -> Self {
        Transition {
            source,
            actions,
            target,
        }
    }

    pub fn one(source: StateId, action: ActionId, target: StateId) -> Self {
        Transition {
            source,
            actions: vec![action],
            target,
        }
    }

    pub fn dim(&self) -> usize {
        self.actions.len()
    }
}

/// A finite system of states, labelled actions and n-transitions.
///
/// State and action names are kept sorted, so two systems built from the
/// same data compare equal regardless of insertion order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TransitionSystem {
    states: Vec<String>,
    actions: Vec<String>,
    labels: Vec<Label>,
    transitions: BTreeSet<Transition>,
}

/// Result of [`TransitionSystem::assemble`]: the system and where each input
/// state and action ended up after sorting.
pub struct Assembled {
    pub system: TransitionSystem,
    pub states: Vec<StateId>,
    pub actions: Vec<ActionId>,
}

impl TransitionSystem {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn builder() -> Builder {
        Builder::default()
    }

    /// Builds a system from raw tables. Transitions refer to positions in the
    /// given tables; the returned vectors translate those positions into ids
    /// of the sorted system.
    pub fn assemble(
        states: Vec<String>,
        actions: Vec<(String, Label)>,
        transitions: impl IntoIterator<Item = (usize, Vec<usize>, usize)>,
    ) -> Result<Assembled> {
        let mut sorted_states: Vec<(String, usize)> =
            states.into_iter().enumerate().map(|(i, s)| (s, i)).collect();
        sorted_states.sort();
        for w in sorted_states.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateState(w[0].0.clone()));
            }
        }
        let mut state_pos = vec![StateId(0); sorted_states.len()];
        for (new, (_, old)) in sorted_states.iter().enumerate() {
            state_pos[*old] = StateId(new as u32);
        }

        let mut sorted_actions: Vec<(String, Label, usize)> = actions
            .into_iter()
            .enumerate()
            .map(|(i, (n, l))| (n, l, i))
            .collect();
        sorted_actions.sort();
        for w in sorted_actions.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateAction(w[0].0.clone()));
            }
        }
        let mut action_pos = vec![ActionId(0); sorted_actions.len()];
        for (new, (_, _, old)) in sorted_actions.iter().enumerate() {
            action_pos[*old] = ActionId(new as u32);
        }

        let mut set = BTreeSet::new();
        for (s, acts, t) in transitions {
            if acts.is_empty() {
                return Err(Error::EmptyTransition);
            }
            let source = *state_pos.get(s).ok_or(Error::StateOutOfRange(s))?;
            let target = *state_pos.get(t).ok_or(Error::StateOutOfRange(t))?;
            let mut ids = Vec::with_capacity(acts.len());
            for a in acts {
                ids.push(*action_pos.get(a).ok_or(Error::ActionOutOfRange(a))?);
            }
            set.insert(Transition::new(source, ids, target));
        }

        let (action_names, labels) = sorted_actions.into_iter().map(|(n, l, _)| (n, l)).unzip();
        Ok(Assembled {
            system: TransitionSystem {
                states: sorted_states.into_iter().map(|(s, _)| s).collect(),
                actions: action_names,
                labels,
                transitions: set,
            },
            states: state_pos,
            actions: action_pos,
        })
    }

    /// Same carrier, different transition set.
    pub fn with_transitions(&self, transitions: BTreeSet<Transition>) -> Result<Self> {
        for t in &transitions {
            self.check_transition(t)?;
        }
        Ok(TransitionSystem {
            states: self.states.clone(),
            actions: self.actions.clone(),
            labels: self.labels.clone(),
            transitions,
        })
    }

    fn check_transition(&self, t: &Transition) -> Result<()> {
        if t.actions.is_empty() {
            return Err(Error::EmptyTransition);
        }
        for s in [t.source, t.target] {
            if s.index() >= self.states.len() {
                return Err(Error::StateOutOfRange(s.index()));
            }
        }
        for a in &t.actions {
            if a.index() >= self.actions.len() {
                return Err(Error::ActionOutOfRange(a.index()));
            }
        }
        Ok(())
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn action_count(&self) -> usize {
        self.actions.len()
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn states(&self) -> impl ExactSizeIterator<Item = StateId> + Clone {
        (0..self.states.len() as u32).map(StateId)
    }

    pub fn actions(&self) -> impl ExactSizeIterator<Item = ActionId> + Clone {
        (0..self.actions.len() as u32).map(ActionId)
    }

    pub fn transitions(&self) -> &BTreeSet<Transition> {
        &self.transitions
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s.index()]
    }

    pub fn action_name(&self, a: ActionId) -> &str {
        &self.actions[a.index()]
    }

    pub fn label(&self, a: ActionId) -> &Label {
        &self.labels[a.index()]
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn action_names(&self) -> &[String] {
        &self.actions
    }

    pub fn state(&self, name: &str) -> Option<StateId> {
        self.states
            .binary_search_by(|s| s.as_str().cmp(name))
            .ok()
            .map(|i| StateId(i as u32))
    }

    pub fn action(&self, name: &str) -> Option<ActionId> {
        self.actions
            .binary_search_by(|s| s.as_str().cmp(name))
            .ok()
            .map(|i| ActionId(i as u32))
    }

    /// Looks up a state by name, failing with [`Error::UnknownState`].
    pub fn expect_state(&self, name: &str) -> Result<StateId> {
        self.state(name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn expect_action(&self, name: &str) -> Result<ActionId> {
        self.action(name)
            .ok_or_else(|| Error::UnknownAction(name.to_string()))
    }

    pub fn contains(&self, t: &Transition) -> bool {
        self.transitions.contains(t)
    }

    pub fn has(&self, source: StateId, actions: &[ActionId], target: StateId) -> bool {
        self.transitions
            .contains(&Transition::new(source, actions.to_vec(), target))
    }

    pub fn one_transitions(&self) -> impl Iterator<Item = (StateId, ActionId, StateId)> + '_ {
        self.transitions
            .iter()
            .filter(|t| t.dim() == 1)
            .map(|t| (t.source, t.actions[0], t.target))
    }

    /// Outgoing 1-transitions per state, as `(action, target)` pairs.
    pub fn successors(&self) -> Vec<Vec<(ActionId, StateId)>> {
        let mut out = vec![Vec::new(); self.states.len()];
        for (s, a, t) in self.one_transitions() {
            out[s.index()].push((a, t));
        }
        out
    }

    pub fn max_dim(&self) -> usize {
        self.transitions.iter().map(Transition::dim).max().unwrap_or(0)
    }

    /// Human-readable rendering of a transition, e.g. `(a, [u v], b)`.
    pub fn show(&self, t: &Transition) -> String {
        let acts: Vec<&str> = t.actions.iter().map(|&a| self.action_name(a)).collect();
        format!(
            "({}, [{}], {})",
            self.state_name(t.source),
            acts.join(" "),
            self.state_name(t.target)
        )
    }
}

impl fmt::Debug for TransitionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let actions: Vec<String> = self
            .actions()
            .map(|a| format!("{}:{}", self.action_name(a), self.label(a)))
            .collect();
        let transitions: Vec<String> = self.transitions.iter().map(|t| self.show(t)).collect();
        f.debug_struct("TransitionSystem")
            .field("states", &self.states)
            .field("actions", &actions)
            .field("transitions", &transitions)
            .finish()
    }
}

#[derive(Serialize)]
struct ActionView<'a> {
    id: &'a str,
    label: &'a str,
}

#[derive(Serialize)]
struct TransitionView<'a> {
    source: &'a str,
    actions: Vec<&'a str>,
    target: &'a str,
}

impl Serialize for TransitionSystem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let actions: Vec<ActionView> = self
            .actions()
            .map(|a| ActionView {
                id: self.action_name(a),
                label: self.label(a).as_str(),
            })
            .collect();
        let transitions: Vec<TransitionView> = self
            .transitions
            .iter()
            .map(|t| TransitionView {
                source: self.state_name(t.source),
                actions: t.actions.iter().map(|&a| self.action_name(a)).collect(),
                target: self.state_name(t.target),
            })
            .collect();
        let mut st = serializer.serialize_struct("TransitionSystem", 3)?;
        st.serialize_field("states", &self.states)?;
        st.serialize_field("actions", &actions)?;
        st.serialize_field("transitions", &transitions)?;
        st.end()
    }
}

/// Name-based incremental construction.
#[derive(Default, Clone, Debug)]
pub struct Builder {
    states: Vec<String>,
    actions: Vec<(String, Label)>,
    transitions: Vec<(String, Vec<String>, String)>,
}

impl Builder {
    pub fn state(mut self, name: impl Into<String>) -> Self {
        self.states.push(name.into());
        self
    }

    pub fn states<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.states.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn action(mut self, name: impl Into<String>, label: impl Into<Label>) -> Self {
        self.actions.push((name.into(), label.into()));
        self
    }

    pub fn transition(mut self, source: &str, actions: &[&str], target: &str) -> Self {
        self.transitions.push((
            source.to_string(),
            actions.iter().map(|a| a.to_string()).collect(),
            target.to_string(),
        ));
        self
    }

    pub fn add_state(&mut self, name: impl Into<String>) {
        self.states.push(name.into());
    }

    pub fn add_action(&mut self, name: impl Into<String>, label: impl Into<Label>) {
        self.actions.push((name.into(), label.into()));
    }

    pub fn add_transition(&mut self, source: String, actions: Vec<String>, target: String) {
        self.transitions.push((source, actions, target));
    }

    pub fn build(self) -> Result<TransitionSystem> {
        let state_index: HashMap<&str, usize> = self
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let action_index: HashMap<&str, usize> = self
            .actions
            .iter()
            .enumerate()
            .map(|(i, (a, _))| (a.as_str(), i))
            .collect();
        let mut raw = Vec::with_capacity(self.transitions.len());
        for (s, acts, t) in &self.transitions {
            let s = *state_index
                .get(s.as_str())
                .ok_or_else(|| Error::UnknownState(s.clone()))?;
            let t = *state_index
                .get(t.as_str())
                .ok_or_else(|| Error::UnknownState(t.clone()))?;
            let mut ids = Vec::with_capacity(acts.len());
            for a in acts {
                ids.push(
                    *action_index
                        .get(a.as_str())
                        .ok_or_else(|| Error::UnknownAction(a.clone()))?,
                );
            }
            raw.push((s, ids, t));
        }
        Ok(TransitionSystem::assemble(self.states, self.actions, raw)?.system)
    }
}

/// A map of systems: a state map and a label-preserving action map sending
/// transitions to transitions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TsMap {
    source: TransitionSystem,
    target: TransitionSystem,
    states: Vec<StateId>,
    actions: Vec<ActionId>,
}

impl TsMap {
    pub fn new(
        source: TransitionSystem,
        target: TransitionSystem,
        states: Vec<StateId>,
        actions: Vec<ActionId>,
    ) -> Result<Self> {
        let map = TsMap {
            source,
            target,
            states,
            actions,
        };
        map.validate()?;
        Ok(map)
    }

    /// Builds a map from name pairs.
    pub fn from_names(
        source: TransitionSystem,
        target: TransitionSystem,
        states: &[(&str, &str)],
        actions: &[(&str, &str)],
    ) -> Result<Self> {
        let state_pairs: BTreeMap<&str, &str> = states.iter().copied().collect();
        let action_pairs: BTreeMap<&str, &str> = actions.iter().copied().collect();
        let mut smap = Vec::with_capacity(source.state_count());
        for s in source.states() {
            let name = source.state_name(s);
            let img = state_pairs
                .get(name)
                .ok_or_else(|| Error::UnknownState(name.to_string()))?;
            smap.push(target.expect_state(img)?);
        }
        let mut amap = Vec::with_capacity(source.action_count());
        for a in source.actions() {
            let name = source.action_name(a);
            let img = action_pairs
                .get(name)
                .ok_or_else(|| Error::UnknownAction(name.to_string()))?;
            amap.push(target.expect_action(img)?);
        }
        TsMap::new(source, target, smap, amap)
    }

    pub fn identity(ts: &TransitionSystem) -> Self {
        TsMap {
            source: ts.clone(),
            target: ts.clone(),
            states: ts.states().collect(),
            actions: ts.actions().collect(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.states.len() != self.source.state_count() {
            return Err(Error::SizeMismatch {
                what: "state",
                expected: self.source.state_count(),
                found: self.states.len(),
            });
        }
        if self.actions.len() != self.source.action_count() {
            return Err(Error::SizeMismatch {
                what: "action",
                expected: self.source.action_count(),
                found: self.actions.len(),
            });
        }
        for s in &self.states {
            if s.index() >= self.target.state_count() {
                return Err(Error::StateOutOfRange(s.index()));
            }
        }
        for (i, a) in self.actions.iter().enumerate() {
            if a.index() >= self.target.action_count() {
                return Err(Error::ActionOutOfRange(a.index()));
            }
            let src = ActionId(i as u32);
            if self.source.label(src) != self.target.label(*a) {
                return Err(Error::LabelMismatch {
                    action: self.source.action_name(src).to_string(),
                    source_label: self.source.label(src).to_string(),
                    image: self.target.action_name(*a).to_string(),
                    image_label: self.target.label(*a).to_string(),
                });
            }
        }
        for t in self.source.transitions() {
            if !self.target.contains(&self.apply(t)) {
                return Err(Error::TransitionNotPreserved(self.source.show(t)));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &TransitionSystem {
        &self.source
    }

    pub fn target(&self) -> &TransitionSystem {
        &self.target
    }

    pub fn state(&self, s: StateId) -> StateId {
        self.states[s.index()]
    }

    pub fn action(&self, a: ActionId) -> ActionId {
        self.actions[a.index()]
    }

    pub fn state_map(&self) -> &[StateId] {
        &self.states
    }

    pub fn action_map(&self) -> &[ActionId] {
        &self.actions
    }

    pub fn apply(&self, t: &Transition) -> Transition {
        Transition::new(
            self.state(t.source),
            t.actions.iter().map(|&a| self.action(a)).collect(),
            self.state(t.target),
        )
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &TsMap) -> Result<TsMap> {
        if self.target != other.source {
            return Err(Error::MismatchedMaps);
        }
        Ok(TsMap {
            source: self.source.clone(),
            target: other.target.clone(),
            states: self.states.iter().map(|&s| other.state(s)).collect(),
            actions: self.actions.iter().map(|&a| other.action(a)).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.states.iter().enumerate().all(|(i, s)| s.index() == i)
            && self.actions.iter().enumerate().all(|(i, a)| a.index() == i)
    }

    pub fn is_onto_states(&self) -> bool {
        let hit: BTreeSet<StateId> = self.states.iter().copied().collect();
        hit.len() == self.target.state_count()
    }

    pub fn is_onto_actions(&self) -> bool {
        let hit: BTreeSet<ActionId> = self.actions.iter().copied().collect();
        hit.len() == self.target.action_count()
    }

    pub fn is_onto_transitions(&self) -> bool {
        let hit: BTreeSet<Transition> = self.source.transitions().iter().map(|t| self.apply(t)).collect();
        hit.len() == self.target.transition_count()
    }

    pub fn is_injective_states(&self) -> bool {
        let hit: BTreeSet<StateId> = self.states.iter().copied().collect();
        hit.len() == self.states.len()
    }

    pub fn is_injective_actions(&self) -> bool {
        let hit: BTreeSet<ActionId> = self.actions.iter().copied().collect();
        hit.len() == self.actions.len()
    }

    /// Bijective on states and actions, with the transition sets in exact
    /// correspondence.
    pub fn is_isomorphism(&self) -> bool {
        self.is_injective_states()
            && self.is_onto_states()
            && self.is_injective_actions()
            && self.is_onto_actions()
            && self.source.transition_count() == self.target.transition_count()
            && self.is_onto_transitions()
    }
}

impl fmt::Debug for TsMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let states: Vec<String> = self
            .source
            .states()
            .map(|s| {
                format!(
                    "{}->{}",
                    self.source.state_name(s),
                    self.target.state_name(self.state(s))
                )
            })
            .collect();
        let actions: Vec<String> = self
            .source
            .actions()
            .map(|a| {
                format!(
                    "{}->{}",
                    self.source.action_name(a),
                    self.target.action_name(self.action(a))
                )
            })
            .collect();
        f.debug_struct("TsMap")
            .field("states", &states)
            .field("actions", &actions)
            .finish()
    }
}

impl Serialize for TsMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let states: BTreeMap<&str, &str> = self
            .source
            .states()
            .map(|s| (self.source.state_name(s), self.target.state_name(self.state(s))))
            .collect();
        let actions: BTreeMap<&str, &str> = self
            .source
            .actions()
            .map(|a| (self.source.action_name(a), self.target.action_name(self.action(a))))
            .collect();
        let mut st = serializer.serialize_struct("TsMap", 4)?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("target", &self.target)?;
        st.serialize_field("state_map", &states)?;
        st.serialize_field("action_map", &actions)?;
        st.end()
    }
}
