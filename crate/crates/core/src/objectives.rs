//! Muller objectives: Boolean formulas over vertices, read under the
//! assignment "vertex is visited infinitely often".

use crate::arena::{Arena, Lasso, PlayerId, VertexId};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::strategy::PositionalProfile;

pub type ObjectiveFormula = Formula<VertexId>;

/// Resolves vertex names to ids.
pub fn resolve(arena: &Arena, f: &Formula<String>) -> Result<ObjectiveFormula> {
    f.try_map(&mut |name: &String| arena.lookup(name))
}

/// Renders an objective back into the formula syntax.
pub fn render(arena: &Arena, f: &ObjectiveFormula) -> String {
    f.display_with(|v: &VertexId| arena.name(*v)).to_string()
}

/// One Muller objective per player, indexed by player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectiveProfile {
    objectives: Vec<ObjectiveFormula>,
}

impl ObjectiveProfile {
    pub fn new(arena: &Arena, objectives: Vec<ObjectiveFormula>) -> Result<Self> {
        if objectives.len() != arena.num_players() {
            return Err(Error::UnknownPlayer(
                objectives.len().min(arena.num_players()),
            ));
        }
        for f in &objectives {
            if let Some(v) = f.atoms().into_iter().find(|v| v.0 >= arena.num_vertices()) {
                return Err(Error::UnknownVertex(format!("#{}", v.0)));
            }
        }
        Ok(Self { objectives })
    }

    pub fn get(&self, p: PlayerId) -> &ObjectiveFormula {
        &self.objectives[p.0]
    }

    pub fn iter(&self) -> impl Iterator<Item = (PlayerId, &ObjectiveFormula)> {
        self.objectives
            .iter()
            .enumerate()
            .map(|(i, f)| (PlayerId(i), f))
    }

    pub fn len(&self) -> usize {
        self.objectives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objectives.is_empty()
    }

    /// Copy with player `p`'s objective replaced.
    pub fn with(&self, p: PlayerId, f: ObjectiveFormula) -> Self {
        let mut objectives = self.objectives.clone();
        objectives[p.0] = f;
        Self { objectives }
    }
}

/// `Büchi(U)` as the Muller formula `⋁_{u ∈ U} u`.
pub fn buchi_to_muller(arena: &Arena, target: &[VertexId]) -> Result<ObjectiveFormula> {
    if let Some(v) = target.iter().find(|v| v.0 >= arena.num_vertices()) {
        return Err(Error::UnknownVertex(format!("#{}", v.0)));
    }
    Ok(Formula::disjunction(
        target.iter().map(|&v| Formula::Atom(v)),
    ))
}

/// Evaluates against a precomputed Inf-mask.
pub fn eval_on_mask(f: &ObjectiveFormula, inf: &[bool]) -> bool {
    f.eval(&|v: &VertexId| inf[v.0])
}

pub fn eval_muller(f: &ObjectiveFormula, lasso: &Lasso) -> bool {
    f.eval(&|v: &VertexId| lasso.cycle.contains(v))
}

/// Winner flags, indexed by player.
pub fn winner_mask(arena: &Arena, objectives: &ObjectiveProfile, lasso: &Lasso) -> Vec<bool> {
    let inf = lasso.inf_mask(arena.num_vertices());
    objectives
        .objectives
        .iter()
        .map(|f| eval_on_mask(f, &inf))
        .collect()
}

pub fn winners(
    arena: &Arena,
    objectives: &ObjectiveProfile,
    profile: &PositionalProfile,
) -> Vec<PlayerId> {
    let lasso = arena.outcome(profile);
    winner_mask(arena, objectives, &lasso)
        .into_iter()
        .enumerate()
        .filter(|(_, w)| *w)
        .map(|(p, _)| PlayerId(p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::tests::triangle;
    use crate::formula::parse_formula;
    use crate::strategy::ProfileSpace;

    fn f(a: &Arena, s: &str) -> ObjectiveFormula {
        resolve(a, &parse_formula(s).unwrap()).unwrap()
    }

    /// O_p = Büchi({v_{(p+1) mod 3}})
    fn alpha(a: &Arena) -> ObjectiveProfile {
        let objs = (0..3)
            .map(|p| buchi_to_muller(a, &[VertexId((p + 1) % 3)]).unwrap())
            .collect();
        ObjectiveProfile::new(a, objs).unwrap()
    }

    fn profile(a: &Arena, succ: &[&str]) -> PositionalProfile {
        PositionalProfile::new(a, succ.iter().map(|s| a.vertex(s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn buchi_formulas() {
        let a = triangle();
        assert_eq!(
            render(&a, &buchi_to_muller(&a, &[VertexId(1)]).unwrap()),
            "v1"
        );
        assert_eq!(buchi_to_muller(&a, &[]).unwrap(), Formula::Const(false));
        assert_eq!(
            render(
                &a,
                &buchi_to_muller(&a, &[VertexId(0), VertexId(2)]).unwrap()
            ),
            "v0 | v2"
        );
        assert!(buchi_to_muller(&a, &[VertexId(7)]).is_err());
    }

    #[test]
    fn unknown_atom_rejected() {
        let a = triangle();
        assert_eq!(
            resolve(&a, &parse_formula("v0 & v9").unwrap()),
            Err(Error::UnknownVertex("v9".into()))
        );
    }

    #[test]
    fn example_evaluation() {
        let a = triangle();
        let l = Lasso {
            prefix: vec![],
            cycle: vec![VertexId(0), VertexId(1)],
        };
        assert!(eval_muller(&f(&a, "v1"), &l));
        assert!(!eval_muller(&f(&a, "v2"), &l));
        assert!(eval_muller(&Formula::Const(true), &l));
        assert!(eval_muller(&f(&a, "v2 -> v0"), &l));
    }

    #[test]
    fn example_winners() {
        let a = triangle();
        let al = alpha(&a);
        let s = profile(&a, &["v1", "v2", "v0"]);
        assert_eq!(
            winners(&a, &al, &s),
            vec![PlayerId(0), PlayerId(1), PlayerId(2)]
        );
        let s2 = profile(&a, &["v1", "v0", "v0"]);
        assert_eq!(winners(&a, &al, &s2), vec![PlayerId(0), PlayerId(2)]);

        let none = ObjectiveProfile::new(&a, vec![Formula::Const(false); 3]).unwrap();
        assert!(winners(&a, &none, &s).is_empty());
    }

    #[test]
    fn buchi_agrees_with_inf_intersection() {
        let a = triangle();
        let space = ProfileSpace::new(&a, u64::MAX).unwrap();
        for mask in 0u32..8 {
            let u: Vec<VertexId> = (0..3)
                .filter(|i| mask >> i & 1 == 1)
                .map(VertexId)
                .collect();
            let phi = buchi_to_muller(&a, &u).unwrap();
            for idx in 0..space.len() {
                let l = a.outcome(&space.decode(idx));
                let expected = l.inf_set().iter().any(|v| u.contains(v));
                assert_eq!(eval_muller(&phi, &l), expected);
            }
        }
    }

    #[test]
    fn de_morgan_and_weakening() {
        let a = triangle();
        let space = ProfileSpace::new(&a, u64::MAX).unwrap();
        let lhs = f(&a, "!(v0 & v2)");
        let rhs = f(&a, "!v0 | !v2");
        let al = alpha(&a);
        for idx in 0..space.len() {
            let s = space.decode(idx);
            let l = a.outcome(&s);
            assert_eq!(eval_muller(&lhs, &l), eval_muller(&rhs, &l));
            let before = winners(&a, &al, &s);
            for p in a.players() {
                let weaker = al.with(p, Formula::or(al.get(p).clone(), f(&a, "v2 & !v1")));
                let after = winners(&a, &weaker, &s);
                assert!(before.iter().all(|q| after.contains(q)));
            }
        }
    }
}
