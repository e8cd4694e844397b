//! Desk-scale groups with a solved word problem: finite multiplication
//! tables, free groups on named generators, and free abelian groups.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::FreeProdError;

/// A group element. Which variant is meaningful depends on the owning group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Elem {
    /// Index into a multiplication table.
    Fin(usize),
    /// Freely reduced word; letter `k > 0` is generator `k - 1`, `-k` its inverse.
    Free(Vec<i32>),
    /// Exponent vector.
    Ab(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the table (closure, identity, inverses, associativity).
    pub fn from_table(
        name: impl Into<String>,
        names: Vec<String>,
        table: Vec<Vec<usize>>,
        generators: Option<Vec<usize>>,
    ) -> Result<Self, FreeProdError> {
        let n = names.len();
        let bad = |m: &str| FreeProdError::InvalidData(m.to_string());
        if n == 0 {
            return Err(bad("group has no elements"));
        }
        if names.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(bad("duplicate element names"));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(bad("table must be square with entries in range"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| bad("no identity element"))?;
        let mut inverses = vec![0; n];
        for g in 0..n {
            inverses[g] = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| bad("element without inverse"))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(bad("table is not associative"));
                    }
                }
            }
        }
        let mut g = FiniteGroup { name: name.into(), names, table, identity, inverses, generators: vec![] };
        g.generators = match generators {
            Some(gens) => {
                if gens.iter().any(|&x| x >= n) {
                    return Err(bad("generator out of range"));
                }
                if g.generated(&gens).len() != n {
                    return Err(bad("listed generators do not generate the group"));
                }
                gens
            }
            None => g.greedy_generators(),
        };
        Ok(g)
    }

    /// The group generated by permutations of `0..degree`, composed as
    /// functions: `(p q)(i) = p(q(i))`.
    pub fn from_permutations(
        name: impl Into<String>,
        gens: &[(String, Vec<usize>)],
        namer: impl Fn(&[usize]) -> String,
    ) -> Result<Self, FreeProdError> {
        let degree = gens.first().map_or(0, |g| g.1.len());
        let id: Vec<usize> = (0..degree).collect();
        let mut perms = vec![id];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(perms[0].clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (_, g) in gens {
                let p: Vec<usize> = (0..degree).map(|k| perms[i][g[k]]).collect();
                if !index.contains_key(&p) {
                    index.insert(p.clone(), perms.len());
                    queue.push_back(perms.len());
                    perms.push(p);
                }
            }
        }
        let n = perms.len();
        let table = (0..n)
            .map(|a| (0..n).map(|b| index[&compose(&perms[a], &perms[b])]).collect())
            .collect();
        let names = perms.iter().map(|p| namer(p)).collect();
        let generators = gens.iter().map(|(_, g)| index[g]).collect();
        FiniteGroup::from_table(name, names, table, Some(generators))
    }

    /// `Z/n` with elements `1, g, g^2, ...` named from `letter`.
    pub fn cyclic(name: impl Into<String>, letter: &str, n: usize) -> Self {
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => letter.to_string(),
                _ => format!("{letter}^{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let gens = if n > 1 { Some(vec![1]) } else { Some(vec![]) };
        FiniteGroup::from_table(name, names, table, gens).expect("cyclic table is valid")
    }

    pub fn trivial(name: impl Into<String>) -> Self {
        FiniteGroup::cyclic(name, "g", 1)
    }

    /// `S_3` with elements named in cycle notation.
    pub fn s3() -> Self {
        let gens = [("(12)".to_string(), vec![1, 0, 2]), ("(123)".to_string(), vec![1, 2, 0])];
        FiniteGroup::from_permutations("S3", &gens, cycle_name).expect("S3 is valid")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv_idx(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name.trim())
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.table[x][g];
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let s: BTreeSet<usize> = set.iter().copied().collect();
        s.contains(&self.identity)
            && s.iter().all(|&a| s.contains(&self.inverses[a]) && s.iter().all(|&b| s.contains(&self.table[a][b])))
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.generated(&gens);
        for g in 0..self.order() {
            if span.binary_search(&g).is_err() {
                gens.push(g);
                span = self.generated(&gens);
            }
        }
        gens
    }
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    (0..p.len()).map(|k| p[q[k]]).collect()
}

/// Cycle notation on points `1..=n`, `()` for the identity.
pub fn cycle_name(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        out.push('(');
        let mut k = s;
        while !seen[k] {
            seen[k] = true;
            out.push_str(&(k + 1).to_string());
            k = p[k];
        }
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeGroup {
    pub name: String,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeAbelianGroup {
    pub name: String,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupOracle {
    Finite(FiniteGroup),
    Free(FreeGroup),
    FreeAbelian(FreeAbelianGroup),
}

impl GroupOracle {
    pub fn free(name: impl Into<String>, gens: &[&str]) -> Self {
        GroupOracle::Free(FreeGroup { name: name.into(), generators: gens.iter().map(|s| s.to_string()).collect() })
    }

    pub fn free_abelian(name: impl Into<String>, gens: &[&str]) -> Self {
        GroupOracle::FreeAbelian(FreeAbelianGroup {
            name: name.into(),
            generators: gens.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn name(&self) -> &str {
        match self {
            GroupOracle::Finite(g) => &g.name,
            GroupOracle::Free(g) => &g.name,
            GroupOracle::FreeAbelian(g) => &g.name,
        }
    }

    pub fn identity(&self) -> Elem {
        match self {
            GroupOracle::Finite(g) => Elem::Fin(g.identity),
            GroupOracle::Free(_) => Elem::Free(vec![]),
            GroupOracle::FreeAbelian(g) => Elem::Ab(vec![0; g.generators.len()]),
        }
    }

    pub fn is_identity(&self, a: &Elem) -> bool {
        *a == self.identity()
    }

    /// Whether `a` is a well-formed element of this group.
    pub fn contains(&self, a: &Elem) -> bool {
        match (self, a) {
            (GroupOracle::Finite(g), Elem::Fin(i)) => *i < g.order(),
            (GroupOracle::Free(g), Elem::Free(w)) => {
                let r = g.generators.len() as i32;
                w.iter().all(|&l| l != 0 && l.abs() <= r) && w.windows(2).all(|p| p[0] != -p[1])
            }
            (GroupOracle::FreeAbelian(g), Elem::Ab(v)) => v.len() == g.generators.len(),
            _ => false,
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (GroupOracle::Finite(g), Elem::Fin(x), Elem::Fin(y)) => Elem::Fin(g.table[*x][*y]),
            (GroupOracle::Free(_), Elem::Free(x), Elem::Free(y)) => {
                let mut out = x.clone();
                for &l in y {
                    if out.last() == Some(&-l) {
                        out.pop();
                    } else {
                        out.push(l);
                    }
                }
                Elem::Free(out)
            }
            (GroupOracle::FreeAbelian(_), Elem::Ab(x), Elem::Ab(y)) => {
                Elem::Ab(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            _ => panic!("element does not belong to group {}", self.name()),
        }
    }

    pub fn inv(&self, a: &Elem) -> Elem {
        match (self, a) {
            (GroupOracle::Finite(g), Elem::Fin(x)) => Elem::Fin(g.inverses[*x]),
            (GroupOracle::Free(_), Elem::Free(w)) => Elem::Free(w.iter().rev().map(|l| -l).collect()),
            (GroupOracle::FreeAbelian(_), Elem::Ab(v)) => Elem::Ab(v.iter().map(|x| -x).collect()),
            _ => panic!("element does not belong to group {}", self.name()),
        }
    }

    pub fn pow(&self, a: &Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(a) } else { a.clone() };
        (0..k.unsigned_abs()).fold(self.identity(), |acc, _| self.mul(&acc, &base))
    }

    pub fn generators(&self) -> Vec<Elem> {
        match self {
            GroupOracle::Finite(g) => g.generators.iter().map(|&i| Elem::Fin(i)).collect(),
            GroupOracle::Free(g) => (1..=g.generators.len() as i32).map(|k| Elem::Free(vec![k])).collect(),
            GroupOracle::FreeAbelian(g) => {
                let r = g.generators.len();
                (0..r)
                    .map(|k| Elem::Ab((0..r).map(|j| i64::from(j == k)).collect()))
                    .collect()
            }
        }
    }

    /// All elements, for finite groups.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        match self {
            GroupOracle::Finite(g) => Some((0..g.order()).map(Elem::Fin).collect()),
            GroupOracle::Free(g) if g.generators.is_empty() => Some(vec![self.identity()]),
            GroupOracle::FreeAbelian(g) if g.generators.is_empty() => Some(vec![self.identity()]),
            _ => None,
        }
    }

    pub fn order(&self) -> Option<usize> {
        self.elements().map(|e| e.len())
    }

    pub fn as_finite(&self) -> Option<&FiniteGroup> {
        match self {
            GroupOracle::Finite(g) => Some(g),
            _ => None,
        }
    }

    pub fn render(&self, a: &Elem) -> String {
        match (self, a) {
            (GroupOracle::Finite(g), Elem::Fin(i)) => g.names[*i].clone(),
            (GroupOracle::Free(g), Elem::Free(w)) => {
                let mut parts: Vec<(usize, i64)> = Vec::new();
                for &l in w {
                    let (k, e) = (l.unsigned_abs() as usize - 1, l.signum() as i64);
                    match parts.last_mut() {
                        Some((pk, pe)) if *pk == k => *pe += e,
                        _ => parts.push((k, e)),
                    }
                }
                power_product(parts.iter().map(|&(k, e)| (g.generators[k].as_str(), e)))
            }
            (GroupOracle::FreeAbelian(g), Elem::Ab(v)) => {
                power_product(g.generators.iter().zip(v).map(|(n, &e)| (n.as_str(), e)))
            }
            _ => format!("{a:?}"),
        }
    }

    /// Parses the output of [`GroupOracle::render`]. Free and free abelian
    /// elements are products of `name` or `name^k` separated by spaces or `*`.
    pub fn parse(&self, s: &str) -> Result<Elem, FreeProdError> {
        let s = s.trim();
        let err = || FreeProdError::Parse(format!("`{s}` is not an element of {}", self.name()));
        match self {
            GroupOracle::Finite(g) => g.index_of(s).map(Elem::Fin).ok_or_else(err),
            GroupOracle::Free(g) => {
                let mut acc = self.identity();
                for (k, e) in parse_powers(s, &g.generators).ok_or_else(err)? {
                    let letter = Elem::Free(vec![k as i32 + 1]);
                    acc = self.mul(&acc, &self.pow(&letter, e));
                }
                Ok(acc)
            }
            GroupOracle::FreeAbelian(g) => {
                let mut v = vec![0; g.generators.len()];
                for (k, e) in parse_powers(s, &g.generators).ok_or_else(err)? {
                    v[k] += e;
                }
                Ok(Elem::Ab(v))
            }
        }
    }
}

impl fmt::Display for GroupOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOracle::Finite(g) => write!(f, "{} (order {})", g.name, g.order()),
            GroupOracle::Free(g) => write!(f, "{} (free on {})", g.name, g.generators.join(", ")),
            GroupOracle::FreeAbelian(g) => write!(f, "{} (free abelian on {})", g.name, g.generators.join(", ")),
        }
    }
}

fn power_product<'a>(parts: impl Iterator<Item = (&'a str, i64)>) -> String {
    let shown: Vec<String> = parts
        .filter(|&(_, e)| e != 0)
        .map(|(n, e)| if e == 1 { n.to_string() } else { format!("{n}^{e}") })
        .collect();
    if shown.is_empty() {
        "1".into()
    } else {
        shown.join(" ")
    }
}

fn parse_powers(s: &str, gens: &[String]) -> Option<Vec<(usize, i64)>> {
    if s.is_empty() || s == "1" {
        return Some(vec![]);
    }
    s.split(|c: char| c.is_whitespace() || c == '*')
        .filter(|t| !t.is_empty())
        .map(|tok| {
            let (name, e) = match tok.split_once('^') {
                Some((n, e)) => (n, e.parse::<i64>().ok()?),
                None => (tok, 1),
            };
            Some((gens.iter().position(|g| g == name)?, e))
        })
        .collect()
}
