//! Arena builders for Boolean and two-block QBF formulas, and a brute-force
//! QBF evaluator to check them against.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::arena::{is_identifier, Arena, ArenaBuilder, VertexId};
use crate::error::{Error, Result};
use crate::formula::{parse_formula, Formula};
use crate::objectives::{resolve, ObjectiveFormula, ObjectiveProfile};
use crate::strategy::PositionalProfile;

/// Largest variable count `qbf_eval` accepts.
pub const MAX_QBF_VARIABLES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantifier::Forall => "forall",
            Quantifier::Exists => "exists",
        })
    }
}

/// A prenex QBF: quantifier blocks (outermost first) over a Boolean matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QbfInstance {
    prefix: Vec<(Quantifier, Vec<String>)>,
    matrix: Formula<String>,
}

impl QbfInstance {
    /// Empty blocks are dropped and adjacent blocks with the same quantifier merged.
    pub fn new(prefix: Vec<(Quantifier, Vec<String>)>, matrix: Formula<String>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut blocks: Vec<(Quantifier, Vec<String>)> = Vec::new();
        for (q, vars) in prefix {
            for v in &vars {
                if !is_identifier(v) {
                    return Err(Error::InvalidName(v.clone()));
                }
                if !seen.insert(v.clone()) {
                    return Err(Error::DuplicateVariable(v.clone()));
                }
            }
            if vars.is_empty() {
                continue;
            }
            match blocks.last_mut() {
                Some((last, acc)) if *last == q => acc.extend(vars),
                _ => blocks.push((q, vars)),
            }
        }
        if let Some(v) = matrix.atoms().into_iter().find(|v| !seen.contains(*v)) {
            return Err(Error::UnboundVariable(v.clone()));
        }
        Ok(Self {
            prefix: blocks,
            matrix,
        })
    }

    pub fn prefix(&self) -> &[(Quantifier, Vec<String>)] {
        &self.prefix
    }

    pub fn matrix(&self) -> &Formula<String> {
        &self.matrix
    }

    pub fn num_variables(&self) -> usize {
        self.prefix.iter().map(|(_, vs)| vs.len()).sum()
    }

    /// Quantifier shape of the prefix, e.g. `[Forall, Exists]`.
    pub fn shape(&self) -> Vec<Quantifier> {
        self.prefix.iter().map(|(q, _)| *q).collect()
    }

    fn describe_shape(&self) -> String {
        if self.prefix.is_empty() {
            return "empty prefix".into();
        }
        self.shape()
            .iter()
            .map(|q| q.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for QbfInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (q, vars) in &self.prefix {
            writeln!(f, "{} {}", q, vars.join(" "))?;
        }
        writeln!(f, "{}", self.matrix)
    }
}

/// Parses the QBF text format: leading `forall ...` / `exists ...` lines,
/// then the matrix. Blank lines and `#` comments are ignored.
pub fn parse_qbf(text: &str) -> Result<QbfInstance> {
    let mut prefix = Vec::new();
    let mut matrix_lines = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let head = words.next().unwrap_or("");
        let q = match head {
            "forall" => Some(Quantifier::Forall),
            "exists" => Some(Quantifier::Exists),
            _ => None,
        };
        match q {
            Some(q) if matrix_lines.is_empty() => {
                prefix.push((q, words.map(str::to_string).collect()));
            }
            _ => matrix_lines.push(line.to_string()),
        }
    }
    if matrix_lines.is_empty() {
        return Err(Error::FormulaSyntax {
            col: 1,
            message: "missing matrix".into(),
        });
    }
    let matrix = parse_formula(&matrix_lines.join(" "))?;
    QbfInstance::new(prefix, matrix)
}

/// QBF truth by exhaustive expansion.
pub fn qbf_eval(qbf: &QbfInstance) -> Result<bool> {
    let n = qbf.num_variables();
    if n > MAX_QBF_VARIABLES {
        return Err(Error::TooManyVariables(n, MAX_QBF_VARIABLES));
    }
    let order: Vec<(Quantifier, &str)> = qbf
        .prefix
        .iter()
        .flat_map(|(q, vs)| vs.iter().map(move |v| (*q, v.as_str())))
        .collect();
    let index: BTreeMap<&str, usize> = order
        .iter()
        .enumerate()
        .map(|(i, (_, v))| (*v, i))
        .collect();
    let matrix = qbf.matrix.map(&mut |v: &String| index[v.as_str()]);
    let mut values = vec![false; n];
    fn go(
        i: usize,
        order: &[(Quantifier, &str)],
        values: &mut Vec<bool>,
        m: &Formula<usize>,
    ) -> bool {
        if i == order.len() {
            return m.eval(&|&v: &usize| values[v]);
        }
        let mut results = [false; 2];
        for (k, b) in [false, true].into_iter().enumerate() {
            values[i] = b;
            results[k] = go(i + 1, order, values, m);
        }
        match order[i].0 {
            Quantifier::Forall => results[0] && results[1],
            Quantifier::Exists => results[0] || results[1],
        }
    }
    Ok(go(0, &order, &mut values, &matrix))
}

/// `(variable, chooser vertex, positive literal vertex)`.
pub type VariableVertices = (String, VertexId, VertexId);

/// A built instance: arena, objectives, specification, and the map from
/// source variables to the literal vertices standing for them.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub arena: Arena,
    pub objectives: ObjectiveProfile,
    pub spec: ObjectiveFormula,
    /// In chain order.
    pub variables: Vec<VariableVertices>,
}

impl Reduction {
    /// The profile choosing literals according to `assignment`.
    pub fn profile_for(&self, assignment: impl Fn(&str) -> bool) -> Result<PositionalProfile> {
        let mut succ: Vec<VertexId> = self
            .arena
            .vertices()
            .map(|v| self.arena.successors(v)[0])
            .collect();
        for (name, chooser, pos) in &self.variables {
            // The negative literal is declared right after the positive one.
            succ[chooser.0] = if assignment(name) {
                *pos
            } else {
                VertexId(pos.0 + 1)
            };
        }
        PositionalProfile::new(&self.arena, succ)
    }

    /// The assignment a profile encodes, in chain order.
    pub fn assignment_of(&self, profile: &PositionalProfile) -> Vec<(String, bool)> {
        self.variables
            .iter()
            .map(|(name, chooser, pos)| (name.clone(), profile.successor(*chooser) == *pos))
            .collect()
    }
}

/// Appends `prefix<i> -> {lit<i>, nlit<i>}` gadgets; returns `(chooser, positive literal)` per variable.
fn chain(
    b: &mut ArenaBuilder,
    chooser: &str,
    lit: &str,
    owner: usize,
    count: usize,
    first_initial: bool,
) -> Vec<(String, String, String)> {
    (1..=count)
        .map(|i| {
            let c = format!("{chooser}{i}");
            let pos = format!("{lit}{i}");
            let neg = format!("n{lit}{i}");
            if i == 1 && first_initial {
                b.initial_vertex(&c, owner);
            } else {
                b.vertex(&c, owner);
            }
            b.vertex(&pos, owner).vertex(&neg, owner);
            b.edge(&c, &pos).edge(&c, &neg);
            (c, pos, neg)
        })
        .collect()
}

fn link(b: &mut ArenaBuilder, gadgets: &[(String, String, String)]) {
    let k = gadgets.len();
    for i in 0..k {
        let next = &gadgets[(i + 1) % k].0;
        b.edge(&gadgets[i].1, next).edge(&gadgets[i].2, next);
    }
}

fn two_block(
    qbf: &QbfInstance,
    expected: [Quantifier; 2],
    name: &str,
) -> Result<(Vec<String>, Vec<String>)> {
    if qbf.shape() != expected {
        return Err(Error::PrefixShapeMismatch(format!(
            "{name} needs prefix `{} {}`, got `{}`",
            expected[0],
            expected[1],
            qbf.describe_shape()
        )));
    }
    let (u, e) = match expected[0] {
        Quantifier::Forall => (&qbf.prefix[0].1, &qbf.prefix[1].1),
        Quantifier::Exists => (&qbf.prefix[1].1, &qbf.prefix[0].1),
    };
    Ok((u.clone(), e.clone()))
}

/// The two-player arena shared by both QBF reductions: A (player 0) picks
/// the universal variables on `a<i>`, E (player 1) the existential ones on
/// `e<j>`, and the play cycles through all choices. Returns the arena, the
/// matrix over literal vertices and the variable map.
fn qbf_arena(
    qbf: &QbfInstance,
    universal: &[String],
    existential: &[String],
) -> Result<(Arena, ObjectiveFormula, Vec<VariableVertices>)> {
    let mut b = ArenaBuilder::new(2);
    let mut gadgets = chain(&mut b, "a", "x", 0, universal.len(), true);
    gadgets.extend(chain(&mut b, "e", "y", 1, existential.len(), false));
    link(&mut b, &gadgets);
    let arena = b.build()?;
    let renamed: BTreeMap<&str, &str> = universal
        .iter()
        .chain(existential)
        .zip(&gadgets)
        .map(|(v, g)| (v.as_str(), g.1.as_str()))
        .collect();
    let psi = resolve(
        &arena,
        &qbf.matrix
            .map(&mut |v: &String| renamed[v.as_str()].to_string()),
    )?;
    let vars = universal
        .iter()
        .chain(existential)
        .zip(&gadgets)
        .map(|(v, g)| Ok((v.clone(), arena.lookup(&g.0)?, arena.lookup(&g.1)?)))
        .collect::<Result<_>>()?;
    Ok((arena, psi, vars))
}

/// `∀x ∃y ψ` to a Nash verification instance: `O_A = true`, `O_E = ψ`, spec `ψ`.
pub fn build_aesat_instance(qbf: &QbfInstance) -> Result<Reduction> {
    let (u, e) = two_block(
        qbf,
        [Quantifier::Forall, Quantifier::Exists],
        "forall-exists reduction",
    )?;
    let (arena, psi, variables) = qbf_arena(qbf, &u, &e)?;
    let objectives = ObjectiveProfile::new(&arena, vec![Formula::Const(true), psi.clone()])?;
    Ok(Reduction {
        arena,
        objectives,
        spec: psi,
        variables,
    })
}

/// `∃y ∀x ψ` to a zero-sum CKR verification instance: `O_A = ¬ψ`, `O_E = ψ`, spec `ψ`.
pub fn build_easat_instance(qbf: &QbfInstance) -> Result<Reduction> {
    let (u, e) = two_block(
        qbf,
        [Quantifier::Exists, Quantifier::Forall],
        "exists-forall reduction",
    )?;
    let (arena, psi, variables) = qbf_arena(qbf, &u, &e)?;
    let objectives = ObjectiveProfile::new(&arena, vec![Formula::not(psi.clone()), psi.clone()])?;
    Ok(Reduction {
        arena,
        objectives,
        spec: psi,
        variables,
    })
}

/// Single-player instance for unsatisfiability, over the formula's variables
/// in order of first occurrence.
pub fn build_sat_instance(formula: &Formula<String>) -> Result<Reduction> {
    let vars: Vec<String> = formula.atoms().into_iter().cloned().collect();
    build_sat_instance_over(&vars, formula)
}

/// As [`build_sat_instance`], over an explicit variable list (which may
/// include variables the formula does not mention).
pub fn build_sat_instance_over(vars: &[String], formula: &Formula<String>) -> Result<Reduction> {
    if vars.is_empty() {
        return Err(Error::NoVariables);
    }
    let qbf = QbfInstance::new(vec![(Quantifier::Exists, vars.to_vec())], formula.clone())?;
    let mut b = ArenaBuilder::new(1);
    let gadgets = chain(&mut b, "v", "x", 0, vars.len(), true);
    link(&mut b, &gadgets);
    let arena = b.build()?;
    let renamed: BTreeMap<&str, &str> = vars
        .iter()
        .zip(&gadgets)
        .map(|(v, g)| (v.as_str(), g.1.as_str()))
        .collect();
    let phi = resolve(
        &arena,
        &qbf.matrix
            .map(&mut |v: &String| renamed[v.as_str()].to_string()),
    )?;
    let variables = vars
        .iter()
        .zip(&gadgets)
        .map(|(v, g)| Ok((v.clone(), arena.lookup(&g.0)?, arena.lookup(&g.1)?)))
        .collect::<Result<_>>()?;
    let objectives = ObjectiveProfile::new(&arena, vec![phi.clone()])?;
    Ok(Reduction {
        arena,
        objectives,
        spec: Formula::not(phi),
        variables,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::{eval_muller, render};
    use crate::strategy::ProfileSpace;

    fn q(text: &str) -> QbfInstance {
        parse_qbf(text).unwrap()
    }

    #[test]
    fn parse_and_eval() {
        assert!(qbf_eval(&q("forall x1\nexists y1\nx1 | y1")).unwrap());
        assert!(!qbf_eval(&q("exists y1\nforall x1\ny1 & x1")).unwrap());
        assert!(qbf_eval(&q("true")).unwrap());
        assert!(!qbf_eval(&q("forall x1\nexists y1\nx1 & y1")).unwrap());
        let merged = q("forall a\nforall b\nexists c\n# comment\na | b | c");
        assert_eq!(merged.shape(), vec![Quantifier::Forall, Quantifier::Exists]);
        assert_eq!(merged.prefix()[0].1, vec!["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_qbf("forall x\ny"),
            Err(Error::UnboundVariable("y".into()))
        );
        assert!(parse_qbf("forall x\n").is_err());
        assert!(parse_qbf("forall x x\nx").is_err());
        let many: Vec<String> = (0..21).map(|i| format!("z{i}")).collect();
        let big = format!("exists {}\n{}", many.join(" "), many.join(" | "));
        assert_eq!(qbf_eval(&q(&big)), Err(Error::TooManyVariables(21, 20)));
    }

    #[test]
    fn figure_arena() {
        let r = build_aesat_instance(&q("forall p q\nexists r\n(p | r) & q")).unwrap();
        let names: Vec<&str> = r.arena.vertices().map(|v| r.arena.name(v)).collect();
        assert_eq!(
            names,
            ["a1", "x1", "nx1", "a2", "x2", "nx2", "e1", "y1", "ny1"]
        );
        assert_eq!(r.arena.name(r.arena.initial()), "a1");
        let a = &r.arena;
        let succ = |n: &str| -> Vec<&str> {
            a.successors(a.lookup(n).unwrap())
                .iter()
                .map(|&v| a.name(v))
                .collect()
        };
        assert_eq!(succ("nx2"), ["e1"]);
        assert_eq!(succ("ny1"), ["a1"]);
        assert_eq!(succ("e1"), ["y1", "ny1"]);
        assert_eq!(a.owner(a.lookup("x2").unwrap()).0, 0);
        assert_eq!(a.owner(a.lookup("y1").unwrap()).0, 1);
        assert_eq!(render(a, &r.spec), "(x1 | y1) & x2");
        assert_eq!(
            r.objectives.get(crate::arena::PlayerId(0)),
            &Formula::Const(true)
        );
    }

    #[test]
    fn prefix_guards() {
        let ae = q("forall x\nexists y\nx | y");
        let ea = q("exists y\nforall x\nx | y");
        assert!(matches!(
            build_easat_instance(&ae),
            Err(Error::PrefixShapeMismatch(_))
        ));
        assert!(matches!(
            build_aesat_instance(&ea),
            Err(Error::PrefixShapeMismatch(_))
        ));
        assert!(matches!(
            build_aesat_instance(&q("forall x\nx")),
            Err(Error::PrefixShapeMismatch(_))
        ));
        assert!(matches!(
            build_aesat_instance(&q("true")),
            Err(Error::PrefixShapeMismatch(_))
        ));
        assert!(build_easat_instance(&ea).is_ok());
    }

    #[test]
    fn sat_arena() {
        let r = build_sat_instance(&parse_formula("x1").unwrap()).unwrap();
        assert_eq!(r.arena.num_vertices(), 3);
        assert_eq!(render(&r.arena, &r.spec), "!x1");
        assert_eq!(
            build_sat_instance(&Formula::Const(true)).unwrap_err(),
            Error::NoVariables
        );
        let r = build_sat_instance(&parse_formula("b & !a").unwrap()).unwrap();
        assert_eq!(r.variables[0].0, "b");
        assert_eq!(r.arena.num_vertices(), 6);
    }

    #[test]
    fn assignments_biject_with_profiles() {
        let qbf = q("forall a b\nexists c d\n(a -> c) & (b | !d) & !(a & d)");
        let r = build_aesat_instance(&qbf).unwrap();
        let space = ProfileSpace::new(&r.arena, 1 << 10).unwrap();
        assert_eq!(space.len(), 16);
        let mut seen = BTreeSet::new();
        for s in space.iter() {
            let asg = r.assignment_of(&s);
            let lookup: BTreeMap<String, bool> = asg.iter().cloned().collect();
            assert!(seen.insert(asg.clone()));
            assert_eq!(r.profile_for(|v| lookup[v]).unwrap(), s);
            let truth = qbf.matrix().eval(&|v: &String| lookup[v]);
            assert_eq!(eval_muller(&r.spec, &r.arena.outcome(&s)), truth);
        }
    }
}
