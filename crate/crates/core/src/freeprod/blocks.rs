//! The `C`-bimodule `S` with its four blocks `_iS_j`, and the basis-level
//! identities `s sigma(M) = M + M~` and `F^ F(M) = M + M~ S` for finitely
//! generated free right `C x C`-modules `M`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::amalgam::Amalgam;
use super::embed::Embedding;
use super::hnn::Hnn;
use super::FreeProdError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockBasis {
    pub description: String,
    /// Basis as a left `C`-module; `None` when infinite.
    pub basis: Option<Vec<String>>,
    /// Rank as a right `C`-module; `None` when infinite.
    pub right_rank: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SBlocks {
    pub case: u8,
    /// Keyed by `(i, j)` for `_iS_j`.
    pub blocks: BTreeMap<String, BlockBasis>,
}

impl SBlocks {
    pub fn block(&self, i: u8, j: u8) -> &BlockBasis {
        &self.blocks[&format!("{i}{j}")]
    }
}

pub enum SData<'a> {
    /// Case 1: a bimodule supplied directly, returned unchanged.
    Bimodule(SBlocks),
    Amalgam(&'a Amalgam),
    Hnn(&'a Hnn),
}

fn reps(e: &Embedding, include_identity: bool) -> Option<Vec<String>> {
    let t = e.transversal()?;
    let skip = usize::from(!include_identity);
    Some(t[skip..].iter().map(|g| e.target().render(g)).collect())
}

fn block(description: String, e: &Embedding, include_identity: bool, right_rank: Option<usize>) -> BlockBasis {
    BlockBasis { description, basis: reps(e, include_identity), right_rank }
}

fn empty(description: &str) -> BlockBasis {
    BlockBasis { description: description.into(), basis: Some(vec![]), right_rank: Some(0) }
}

pub fn s_blocks(data: SData<'_>) -> SBlocks {
    match data {
        SData::Bimodule(s) => s,
        SData::Amalgam(a) => {
            let [e1, e2] = &a.embeddings;
            let (i1, i2) = (e1.index(), e2.index());
            let mut blocks = BTreeMap::new();
            blocks.insert(
                "21".into(),
                block(format!("{}' : nontrivial cosets of {}", a.factors[0].name(), a.subgroup.name()), e1, false, i1.map(|i| i - 1)),
            );
            blocks.insert(
                "12".into(),
                block(format!("{}' : nontrivial cosets of {}", a.factors[1].name(), a.subgroup.name()), e2, false, i2.map(|i| i - 1)),
            );
            blocks.insert("11".into(), empty("0"));
            blocks.insert("22".into(), empty("0"));
            SBlocks { case: 2, blocks }
        }
        SData::Hnn(h) => {
            let (ia, ib) = (h.alpha.index(), h.beta.index());
            let base = h.base.name();
            let mut blocks = BTreeMap::new();
            blocks.insert("21".into(), block(format!("{base}' : nontrivial alpha-cosets"), &h.alpha, false, ia.map(|i| i - 1)));
            blocks.insert("12".into(), block(format!("t {base}'' t^-1 : nontrivial beta-cosets"), &h.beta, false, ib.map(|i| i - 1)));
            blocks.insert("11".into(), block(format!("t {base} : beta-cosets"), &h.beta, true, ia));
            blocks.insert("22".into(), block(format!("{base} t^-1 : alpha-cosets"), &h.alpha, true, ib));
            SBlocks { case: 3, blocks }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma16Report {
    pub m: (usize, usize),
    pub s_sigma_dims: (usize, usize),
    pub m_plus_mtilde_dims: (usize, usize),
    pub s_sigma_bijection: Vec<(String, String)>,
    pub ff_dims: (usize, usize),
    pub m_plus_mtilde_s_dims: (usize, usize),
    pub ff_bijection: Vec<(String, String)>,
    pub ok: bool,
}

fn basis(prime: &str, m: usize) -> Vec<String> {
    (1..=m).map(|k| format!("e{prime}{k}")).collect()
}

/// Left coset representatives `r^-1` of `image(C)` from a right transversal.
fn left_reps(e: &Embedding) -> Result<Vec<String>, FreeProdError> {
    let t = e.transversal().ok_or_else(|| FreeProdError::Unsupported("infinite index".into()))?;
    Ok(t.iter().map(|g| e.target().render(&e.target().inv(g))).collect())
}

fn is_bijection(pairs: &[(String, String)]) -> bool {
    let l: BTreeSet<_> = pairs.iter().map(|p| &p.0).collect();
    let r: BTreeSet<_> = pairs.iter().map(|p| &p.1).collect();
    l.len() == pairs.len() && r.len() == pairs.len()
}

/// Builds both isomorphisms of the lemma as explicit basis bijections for
/// `M = (C^m1, C^m2)`. Cases 2 and 3 with finite indices only.
pub fn lemma16_check(m: (usize, usize), data: &SData<'_>) -> Result<Lemma16Report, FreeProdError> {
    let (m1, m2) = m;
    let (e1, e2) = (basis("'", m1), basis("''", m2));

    // s(sigma(M)) = (M' + M'', M' + M'')  vs  M + M~ = (M' + M'', M'' + M')
    let mut ss = Vec::new();
    for e in &e1 {
        ss.push((format!("1:{e}"), format!("M1:{e}")));
        ss.push((format!("2:{e}"), format!("M~2:{e}")));
    }
    for e in &e2 {
        ss.push((format!("1:{e}"), format!("M~1:{e}")));
        ss.push((format!("2:{e}"), format!("M2:{e}")));
    }

    let mut ff = Vec::new();
    let lhs;
    let s = match data {
        SData::Bimodule(_) => return Err(FreeProdError::Unsupported("the lemma needs C x C (cases 2 and 3)".into())),
        SData::Amalgam(a) => {
            // F^F(M) = (M' A, M'' B)
            let (ra, rb) = (left_reps(&a.embeddings[0])?, left_reps(&a.embeddings[1])?);
            lhs = (m1 * ra.len(), m2 * rb.len());
            for (unit, es, rs) in [(1, &e1, &ra), (2, &e2, &rb)] {
                for e in es {
                    for (k, r) in rs.iter().enumerate() {
                        let target = if k == 0 { format!("M{unit}:{e}") } else { format!("M~S{unit}:{e}*{r}") };
                        ff.push((format!("{unit}:{e}*{r}"), target));
                    }
                }
            }
            s_blocks(SData::Amalgam(a))
        }
        SData::Hnn(h) => {
            // F^F(M) = s_1(M'_a A_a + M''_b A_a) + s_2(M'_a A_b + M''_b A_b)
            let (ra, rb) = (left_reps(&h.alpha)?, left_reps(&h.beta)?);
            lhs = ((m1 + m2) * ra.len(), (m1 + m2) * rb.len());
            for (k, r) in ra.iter().enumerate() {
                for e in &e1 {
                    let target = if k == 0 { format!("M1:{e}") } else { format!("M~S1:{e}*{r}") };
                    ff.push((format!("1:{e}*{r}"), target));
                }
                for e in &e2 {
                    ff.push((format!("1:{e}*{r}"), format!("M~S1:{e}*t {r}")));
                }
            }
            for (k, r) in rb.iter().enumerate() {
                for e in &e2 {
                    let target = if k == 0 { format!("M2:{e}") } else { format!("M~S2:{e}*t {r} t^-1") };
                    ff.push((format!("2:{e}*{r}"), target));
                }
                for e in &e1 {
                    ff.push((format!("2:{e}*{r}"), format!("M~S2:{e}*{r} t^-1")));
                }
            }
            s_blocks(SData::Hnn(h))
        }
    };
    // M + M~ S, counted from the right ranks of the blocks: (M~ S)_j = sum_i M~_i rank(_iS_j)
    let rank = |i: u8, j: u8| s.block(i, j).right_rank.ok_or_else(|| FreeProdError::Unsupported("infinite block".into()));
    let mt = [m2, m1];
    let rhs = (
        m1 + mt[0] * rank(1, 1)? + mt[1] * rank(2, 1)?,
        m2 + mt[0] * rank(1, 2)? + mt[1] * rank(2, 2)?,
    );
    let s_sigma_dims = (m1 + m2, m1 + m2);
    let m_plus_mtilde_dims = (m1 + m2, m2 + m1);
    let ok = s_sigma_dims == m_plus_mtilde_dims
        && ss.len() == 2 * (m1 + m2)
        && is_bijection(&ss)
        && lhs == rhs
        && ff.len() == lhs.0 + lhs.1
        && is_bijection(&ff);
    Ok(Lemma16Report {
        m,
        s_sigma_dims,
        m_plus_mtilde_dims,
        s_sigma_bijection: ss,
        ff_dims: lhs,
        m_plus_mtilde_s_dims: rhs,
        ff_bijection: ff,
        ok,
    })
}
