#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ratver::arena::{Arena, ArenaBuilder, PlayerId, VertexId};
use ratver::formula::Formula;
use ratver::objectives::{buchi_to_muller, ObjectiveFormula, ObjectiveProfile};
use ratver::strategy::profile_count;
use ratver::PositionalProfile;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// v0 -> {v1, v2}, v1 -> {v0, v2}, v2 -> {v0, v1}; player p owns v_p.
pub fn triangle() -> Arena {
    let mut b = ArenaBuilder::new(3);
    b.initial_vertex("v0", 0).vertex("v1", 1).vertex("v2", 2);
    for (x, y) in [
        ("v0", "v1"),
        ("v0", "v2"),
        ("v1", "v0"),
        ("v1", "v2"),
        ("v2", "v0"),
        ("v2", "v1"),
    ] {
        b.edge(x, y);
    }
    b.build().unwrap()
}

/// Player p wants v_{(p+1) mod 3} infinitely often.
pub fn alpha(a: &Arena) -> ObjectiveProfile {
    let objs = (0..3)
        .map(|p| buchi_to_muller(a, &[VertexId((p + 1) % 3)]).unwrap())
        .collect();
    ObjectiveProfile::new(a, objs).unwrap()
}

/// Player p wants her own vertex infinitely often.
pub fn alpha_prime(a: &Arena) -> ObjectiveProfile {
    let objs = (0..3)
        .map(|p| buchi_to_muller(a, &[VertexId(p)]).unwrap())
        .collect();
    ObjectiveProfile::new(a, objs).unwrap()
}

pub fn profile(a: &Arena, succ: &[&str]) -> PositionalProfile {
    PositionalProfile::new(a, succ.iter().map(|s| a.lookup(s).unwrap()).collect()).unwrap()
}

/// Random arena with at most `max_vertices` vertices, 1 to 3 players and at
/// most `max_profiles` positional profiles.
pub fn random_arena(r: &mut ChaCha8Rng, max_vertices: usize, max_profiles: u128) -> Arena {
    loop {
        let n = r.gen_range(2..=max_vertices);
        let players = r.gen_range(1..=3usize);
        let mut b = ArenaBuilder::new(players);
        for v in 0..n {
            let owner = r.gen_range(0..players);
            if v == 0 {
                b.initial_vertex(format!("v{v}"), owner);
            } else {
                b.vertex(format!("v{v}"), owner);
            }
        }
        let all: Vec<usize> = (0..n).collect();
        for v in 0..n {
            let d = r.gen_range(1..=3usize.min(n));
            for &w in all.choose_multiple(r, d) {
                b.edge(format!("v{v}"), format!("v{w}"));
            }
        }
        let a = b.build().unwrap();
        if profile_count(&a) <= max_profiles {
            return a;
        }
    }
}

pub fn random_formula<A: Clone>(r: &mut ChaCha8Rng, atoms: &[A], depth: usize) -> Formula<A> {
    if depth == 0 || r.gen_bool(0.25) {
        if r.gen_bool(0.05) {
            return Formula::Const(r.gen_bool(0.5));
        }
        return Formula::Atom(atoms.choose(r).unwrap().clone());
    }
    match r.gen_range(0..4) {
        0 => Formula::not(random_formula(r, atoms, depth - 1)),
        1 => Formula::and(
            random_formula(r, atoms, depth - 1),
            random_formula(r, atoms, depth - 1),
        ),
        2 => Formula::or(
            random_formula(r, atoms, depth - 1),
            random_formula(r, atoms, depth - 1),
        ),
        _ => Formula::implies(
            random_formula(r, atoms, depth - 1),
            random_formula(r, atoms, depth - 1),
        ),
    }
}

pub fn random_objectives(r: &mut ChaCha8Rng, a: &Arena) -> ObjectiveProfile {
    let vs: Vec<VertexId> = a.vertices().collect();
    let objs = a.players().map(|_| random_formula(r, &vs, 3)).collect();
    ObjectiveProfile::new(a, objs).unwrap()
}

/// Every positional profile, by plain cartesian product.
pub fn all_profiles(a: &Arena) -> Vec<Vec<VertexId>> {
    let mut out = vec![vec![]];
    for v in a.vertices() {
        let mut next = Vec::new();
        for prefix in &out {
            for &w in a.successors(v) {
                let mut p = prefix.clone();
                p.push(w);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Vertices seen in the second half of a `4·|V|²`-step run.
pub fn simulate_inf(a: &Arena, succ: &[VertexId]) -> Vec<bool> {
    let n = a.num_vertices();
    let steps = 4 * n * n;
    let mut seen = vec![false; n];
    let mut v = a.initial();
    for i in 0..steps {
        if i >= steps / 2 {
            seen[v.0] = true;
        }
        v = succ[v.0];
    }
    seen
}

pub fn eval_inf(f: &ObjectiveFormula, inf: &[bool]) -> bool {
    f.eval(&|v: &VertexId| inf[v.0])
}

pub fn naive_wins(a: &Arena, obj: &ObjectiveProfile, succ: &[VertexId]) -> Vec<bool> {
    let inf = simulate_inf(a, succ);
    a.players().map(|p| eval_inf(obj.get(p), &inf)).collect()
}

/// Profiles that agree with `s` off player `p`'s vertices.
pub fn deviations(a: &Arena, s: &[VertexId], p: PlayerId) -> Vec<Vec<VertexId>> {
    all_profiles(a)
        .into_iter()
        .filter(|t| a.vertices().all(|v| a.owner(v) == p || t[v.0] == s[v.0]))
        .collect()
}

pub fn naive_nash(a: &Arena, obj: &ObjectiveProfile) -> BTreeSet<Vec<VertexId>> {
    all_profiles(a)
        .into_iter()
        .filter(|s| {
            let w = naive_wins(a, obj, s);
            a.players().all(|p| {
                w[p.0]
                    || deviations(a, s, p)
                        .iter()
                        .all(|t| !naive_wins(a, obj, t)[p.0])
            })
        })
        .collect()
}

/// `s` with player `p`'s choices taken from `t`.
pub fn splice(a: &Arena, s: &[VertexId], p: PlayerId, t: &[VertexId]) -> Vec<VertexId> {
    a.vertices()
        .map(|v| if a.owner(v) == p { t[v.0] } else { s[v.0] })
        .collect()
}

/// Iterated deletion of inferior profiles, straight from the definition.
pub fn naive_idip(a: &Arena, obj: &ObjectiveProfile) -> BTreeSet<Vec<VertexId>> {
    let all = all_profiles(a);
    let mut pool: BTreeSet<Vec<VertexId>> = all.iter().cloned().collect();
    let wins = |s: &[VertexId], p: PlayerId| naive_wins(a, obj, s)[p.0];
    let same_part = |s: &[VertexId], t: &[VertexId], p: PlayerId| {
        a.owned_by(p).iter().all(|v| s[v.0] == t[v.0])
    };
    loop {
        let inferior: Vec<Vec<VertexId>> = pool
            .iter()
            .filter(|s| {
                a.players().any(|p| {
                    all.iter().any(|t| {
                        let dev = splice(a, s, p, t);
                        !wins(s, p)
                            && wins(&dev, p)
                            && pool
                                .iter()
                                .filter(|s2| same_part(s2, s, p))
                                .all(|s2| !wins(s2, p) || wins(&splice(a, s2, p, t), p))
                    })
                })
            })
            .cloned()
            .collect();
        if inferior.is_empty() {
            return pool;
        }
        for s in inferior {
            pool.remove(&s);
        }
    }
}

/// Uniformly random set partition labels for `k` items.
pub fn random_partition(r: &mut ChaCha8Rng, k: usize) -> Vec<usize> {
    let blocks = r.gen_range(1..=k);
    (0..k).map(|_| r.gen_range(0..blocks)).collect()
}
