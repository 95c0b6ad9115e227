//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use hdts::axioms::{class_of, SystemClass};
use hdts::reflections::cs_reflect;
use hdts::star::star_coreflect;
use hdts::{Label, PointedTs, TransitionSystem};
use rand::Rng;

/// Binomial coefficient.
pub fn choose(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// `Σ_d C(n,d)·2^(n−d)·d!`.
pub fn cube_count_formula(n: usize) -> usize {
    (1..=n).map(|d| choose(n, d) * (1 << (n - d)) * factorial(d)).sum()
}

/// Counts the cube transitions by filtering every tuple
/// `(ε, (i1..id), ε')` with `d ≤ n` against the defining conditions.
pub fn cube_count_brute(n: usize) -> usize {
    fn sequences(n: usize, d: usize) -> Vec<Vec<usize>> {
        if d == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for s in sequences(n, d - 1) {
            for i in 0..n {
                let mut t = s.clone();
                t.push(i);
                out.push(t);
            }
        }
        out
    }
    let mut count = 0;
    for d in 1..=n {
        for seq in sequences(n, d) {
            let distinct: BTreeSet<usize> = seq.iter().copied().collect();
            if distinct.len() != seq.len() {
                continue;
            }
            for e in 0..1usize << n {
                for e2 in 0..1usize << n {
                    let ok = (0..n).all(|i| {
                        let (a, b) = (e >> i & 1, e2 >> i & 1);
                        if distinct.contains(&i) {
                            a == 0 && b == 1
                        } else {
                            a == b
                        }
                    });
                    if ok {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// The cylinder before any reflection: states and actions doubled, every
/// choice of flags on every transition.
pub fn raw_cylinder(x: &TransitionSystem) -> TransitionSystem {
    let mut b = TransitionSystem::builder();
    for s in x.states() {
        for e in 0..2 {
            b.add_state(format!("({},{e})", x.state_name(s)));
        }
    }
    for a in x.actions() {
        for e in 0..2 {
            b.add_action(format!("({},{e})", x.action_name(a)), x.label(a).clone());
        }
    }
    for t in x.transitions() {
        let n = t.dim();
        for flags in 0..1usize << (n + 2) {
            let f = |i: usize| flags >> i & 1;
            let acts = t
                .actions
                .iter()
                .enumerate()
                .map(|(i, &a)| format!("({},{})", x.action_name(a), f(i + 1)))
                .collect();
            b.add_transition(
                format!("({},{})", x.state_name(t.source), f(0)),
                acts,
                format!("({},{})", x.state_name(t.target), f(n + 1)),
            );
        }
    }
    b.build().unwrap()
}

/// The path object built inductively on dimension: a tuple of pairs is kept
/// when all four corner tuples are transitions and, for every reordering and
/// every split point, some pair of states splits it into kept tuples.
pub fn pscocyl(x: &TransitionSystem) -> BTreeSet<(String, Vec<String>, String)> {
    use hdts::{StateId, Transition};
    let states: Vec<StateId> = x.states().collect();
    let pairs: Vec<(StateId, StateId)> = states
        .iter()
        .flat_map(|&a| states.iter().map(move |&b| (a, b)))
        .collect();
    let words: BTreeSet<Vec<hdts::ActionId>> = x.transitions().iter().map(|t| t.actions.clone()).collect();
    let corners = |a: (StateId, StateId), w: &[hdts::ActionId], b: (StateId, StateId)| {
        [(a.0, b.0), (a.0, b.1), (a.1, b.0), (a.1, b.1)]
            .iter()
            .all(|&(s, t)| x.contains(&Transition::new(s, w.to_vec(), t)))
    };
    let max = x.max_dim();
    // layers[n] holds the kept tuples of dimension n
    type Cell = ((StateId, StateId), Vec<hdts::ActionId>, (StateId, StateId));
    let mut layers: Vec<BTreeSet<Cell>> = vec![BTreeSet::new(); max + 1];
    for n in 1..=max {
        for w in words.iter().filter(|w| w.len() == n) {
            for &a in &pairs {
                for &b in &pairs {
                    if !corners(a, w, b) {
                        continue;
                    }
                    let ok = n == 1
                        || hdts::axioms::distinct_permutations(&(0..n).collect::<Vec<_>>())
                            .iter()
                            .all(|sigma| {
                                let ws: Vec<_> = sigma.iter().map(|&i| w[i]).collect();
                                (1..n).all(|p| {
                                    pairs.iter().any(|&g| {
                                        layers[p].contains(&(a, ws[..p].to_vec(), g))
                                            && layers[n - p].contains(&(g, ws[p..].to_vec(), b))
                                    })
                                })
                            });
                    if ok {
                        layers[n].insert((a, w.clone(), b));
                    }
                }
            }
        }
    }
    let name = |p: (StateId, StateId)| format!("({},{})", x.state_name(p.0), x.state_name(p.1));
    layers
        .iter()
        .flatten()
        .map(|(a, w, b)| {
            (
                name(*a),
                w.iter().map(|&u| x.action_name(u).to_string()).collect(),
                name(*b),
            )
        })
        .collect()
}

/// Transitions as name tuples, for comparing systems with the same names.
pub fn named_transitions(ts: &TransitionSystem) -> BTreeSet<(String, Vec<String>, String)> {
    ts.transitions()
        .iter()
        .map(|t| {
            (
                ts.state_name(t.source).to_string(),
                t.actions.iter().map(|&a| ts.action_name(a).to_string()).collect(),
                ts.state_name(t.target).to_string(),
            )
        })
        .collect()
}

/// A recipe for a cubical system: edges and filled squares over `n` states,
/// each with fresh actions.
#[derive(Clone, Debug)]
pub struct Recipe {
    pub states: usize,
    pub labels: usize,
    /// `(source, target, label)`
    pub edges: Vec<(usize, usize, usize)>,
    /// `(a, b, c, d, label1, label2)`: `a -u-> b -v-> d`, `a -v-> c -u-> d`, filled.
    pub squares: Vec<(usize, usize, usize, usize, usize, usize)>,
    /// Edges reusing an existing action: `(source, target, action index)`.
    pub reuse: Vec<(usize, usize, usize)>,
}

impl Recipe {
    pub fn build(&self) -> TransitionSystem {
        let n = self.states.max(1);
        let label = |l: usize| Label::new(((b'a' + (l % self.labels.max(1)) as u8) as char).to_string());
        let mut b = TransitionSystem::builder();
        for i in 0..n {
            b.add_state(format!("s{i}"));
        }
        let st = |i: usize| format!("s{}", i % n);
        let mut actions: Vec<String> = Vec::new();
        let mut fresh = |b: &mut hdts::system::Builder, l: usize| {
            let name = format!("u{}", actions.len());
            b.add_action(name.clone(), label(l));
            actions.push(name.clone());
            name
        };
        for &(s, t, l) in &self.edges {
            let u = fresh(&mut b, l);
            b.add_transition(st(s), vec![u], st(t));
        }
        for &(a, bb, c, d, l1, l2) in &self.squares {
            let u = fresh(&mut b, l1);
            let v = fresh(&mut b, l2);
            b.add_transition(st(a), vec![u.clone()], st(bb));
            b.add_transition(st(bb), vec![v.clone()], st(d));
            b.add_transition(st(a), vec![v.clone()], st(c));
            b.add_transition(st(c), vec![u.clone()], st(d));
            b.add_transition(st(a), vec![u.clone(), v.clone()], st(d));
            b.add_transition(st(a), vec![v, u], st(d));
        }
        if !actions.is_empty() {
            for &(s, t, k) in &self.reuse {
                b.add_transition(st(s), vec![actions[k % actions.len()].clone()], st(t));
            }
        }
        b.build().unwrap()
    }

    pub fn random<R: Rng>(rng: &mut R, max_states: usize) -> Self {
        let states = rng.gen_range(1..=max_states);
        let labels = rng.gen_range(1..=2);
        let edges = (0..rng.gen_range(0..=4))
            .map(|_| (rng.gen_range(0..states), rng.gen_range(0..states), rng.gen_range(0..labels)))
            .collect();
        let squares = (0..rng.gen_range(0..=1))
            .map(|_| {
                (
                    rng.gen_range(0..states),
                    rng.gen_range(0..states),
                    rng.gen_range(0..states),
                    rng.gen_range(0..states),
                    rng.gen_range(0..labels),
                    rng.gen_range(0..labels),
                )
            })
            .collect();
        let reuse = (0..rng.gen_range(0..=2))
            .map(|_| (rng.gen_range(0..states), rng.gen_range(0..states), rng.gen_range(0..8)))
            .collect();
        Recipe {
            states,
            labels,
            edges,
            squares,
            reuse,
        }
    }

    /// A recipe whose state `i > 0` is reached from a smaller state.
    pub fn random_star<R: Rng>(rng: &mut R, max_states: usize) -> Self {
        let mut r = Self::random(rng, max_states);
        for i in 1..r.states {
            let from = rng.gen_range(0..i);
            let l = rng.gen_range(0..r.labels);
            r.edges.push((from, i, l));
        }
        r
    }
}

/// The Cattani-Sassone reflection of a recipe.
pub fn cs_system(r: &Recipe) -> TransitionSystem {
    let raw = r.build();
    assert!(class_of(&raw) >= SystemClass::Cubical, "{raw:?}");
    cs_reflect(&raw).unwrap().0
}

/// The star-shaped part, based at the image of `s0`, of the reflection.
pub fn star_system(r: &Recipe) -> PointedTs {
    let raw = r.build();
    let (cs, unit) = cs_reflect(&raw).unwrap();
    let base = unit.state(raw.state("s0").unwrap());
    star_coreflect(&PointedTs::new(cs, base).unwrap()).0
}

pub fn seeded(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

/// `count` Cattani-Sassone systems with at most `max_states` states.
pub fn random_cs_corpus(seed: u64, count: usize, max_states: usize) -> Vec<TransitionSystem> {
    let mut rng = seeded(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let ts = cs_system(&Recipe::random(&mut rng, max_states));
        if ts.state_count() <= max_states {
            out.push(ts);
        }
    }
    out
}

/// `count` star-shaped Cattani-Sassone systems.
pub fn random_star_corpus(seed: u64, count: usize, max_states: usize) -> Vec<PointedTs> {
    let mut rng = seeded(seed);
    (0..count)
        .map(|_| star_system(&Recipe::random_star(&mut rng, max_states)))
        .collect()
}

/// Eight small Cattani-Sassone systems, at most three states and actions each.
pub fn tiny_corpus() -> Vec<TransitionSystem> {
    use hdts::builders::{cube, discrete, path};
    let l = |s: &str| Label::from(s);
    vec![
        discrete(["a"]),
        discrete(["a", "b"]),
        cube(&[l("x")]),
        path(&hdts::Word::from_letters("xy")).ts,
        TransitionSystem::builder()
            .state("a")
            .action("u", "x")
            .transition("a", &["u"], "a")
            .build()
            .unwrap(),
        TransitionSystem::builder()
            .states(["a", "b"])
            .action("u", "x")
            .action("v", "y")
            .transition("a", &["u"], "b")
            .transition("a", &["v"], "b")
            .build()
            .unwrap(),
        TransitionSystem::builder()
            .states(["a", "b", "c"])
            .action("u", "x")
            .transition("a", &["u"], "b")
            .transition("a", &["u"], "c")
            .build()
            .unwrap(),
        TransitionSystem::builder()
            .states(["a", "b"])
            .action("u", "x")
            .action("v", "y")
            .transition("a", &["u"], "b")
            .transition("b", &["v"], "a")
            .build()
            .unwrap(),
    ]
}

/// The named corpus systems that carry a base state.
pub fn corpus_pointed() -> Vec<(String, PointedTs)> {
    let mut out = Vec::new();
    for name in hdts::corpus::names() {
        let doc = hdts::corpus::load(name).unwrap();
        for s in &doc.systems {
            if let Ok(p) = s.pointed() {
                out.push((format!("{name}/{}", s.name), p));
            }
        }
    }
    out
}

/// Proptest strategy for recipes over at most `max_states` states.
pub fn recipe(max_states: usize) -> impl proptest::strategy::Strategy<Value = Recipe> {
    use proptest::collection::vec;
    use proptest::prelude::*;
    (1..=max_states, 1..=2usize).prop_flat_map(|(n, l)| {
        (
            vec((0..n, 0..n, 0..l), 0..=4),
            vec((0..n, 0..n, 0..n, 0..n, 0..l, 0..l), 0..=1),
            vec((0..n, 0..n, 0..8usize), 0..=2),
        )
            .prop_map(move |(edges, squares, reuse)| Recipe {
                states: n,
                labels: l,
                edges,
                squares,
                reuse,
            })
    })
}

/// Like [`recipe`], with every state reachable from `s0`.
pub fn star_recipe(max_states: usize) -> impl proptest::strategy::Strategy<Value = Recipe> {
    use proptest::prelude::*;
    (recipe(max_states), proptest::collection::vec((any::<usize>(), any::<usize>()), max_states)).prop_map(
        |(mut r, picks)| {
            for (i, &(from, l)) in picks.iter().enumerate().take(r.states).skip(1) {
                r.edges.push((from % i, i, l % r.labels));
            }
            r
        },
    )
}

/// Every pointed map, as full maps.
pub fn pointed_maps(src: &PointedTs, dst: &PointedTs) -> Vec<hdts::PointedMap> {
    use std::ops::ControlFlow;
    let mut out = Vec::new();
    hdts::hom::for_each_map(&src.ts, &dst.ts, &[(src.base, dst.base)], false, |s, a| {
        let m = hdts::TsMap::new(src.ts.clone(), dst.ts.clone(), s.to_vec(), a.to_vec()).unwrap();
        out.push(hdts::PointedMap::new(m, src.base, dst.base).unwrap());
        ControlFlow::Continue(())
    });
    out
}
