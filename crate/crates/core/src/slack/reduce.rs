//! Rewriting modulo `(f − y*y)` by `y*y → f`.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freealg::{Alphabet, FreePoly, Letter, Word};
use crate::linalg::random::seeded;
use crate::linalg::Scalar;

fn check_f(f: &FreePoly) -> Result<()> {
    if f.has_slack() {
        return Err(Error::SlackInF);
    }
    if f.is_constant() {
        return Err(Error::ConstantF);
    }
    Ok(())
}

/// Start positions `k` with `w_k w_{k+1} = y*·y`.
pub fn rewrite_sites(w: &Word) -> Vec<usize> {
    w.letters()
        .windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] == Letter::y_star() && p[1] == Letter::y())
        .map(|(k, _)| k)
        .collect()
}

pub fn is_normal(h: &FreePoly) -> bool {
    h.terms().keys().all(|w| rewrite_sites(w).is_empty())
}

fn slack_alphabet(h: &FreePoly, f: &FreePoly) -> Alphabet {
    let a = h.alphabet().join(f.alphabet());
    Alphabet::slack(a.nvars)
}

/// Rewrites until no word contains `y*y`; `site` picks which occurrence
/// to rewrite. Pending words are merged so cancellations happen early.
fn reduce_by(h: &FreePoly, f: &FreePoly, mut site: impl FnMut(&[usize]) -> usize) -> Result<FreePoly> {
    check_f(f)?;
    let alphabet = slack_alphabet(h, f);
    let mut out = FreePoly::zero(alphabet);
    let mut pending: BTreeMap<Word, Scalar> = h.terms().clone();
    while let Some((w, c)) = pending.pop_last() {
        let sites = rewrite_sites(&w);
        if sites.is_empty() {
            out.add_term(w, &c);
            continue;
        }
        let k = sites[site(&sites)];
        let (pre, post) = (w.subword(0, k), w.subword(k + 2, w.len()));
        for (fw, fc) in f.terms() {
            let nw = pre.concat(fw).concat(&post);
            let e = pending.entry(nw.clone()).or_insert_with(Scalar::zero);
            *e += &(&c * fc);
            if e.is_zero() {
                pending.remove(&nw);
            }
        }
    }
    Ok(out)
}

/// Normal form of `h`, rewriting the leftmost `y*y` first.
pub fn reduce(h: &FreePoly, f: &FreePoly) -> Result<FreePoly> {
    reduce_by(h, f, |_| 0)
}

/// Normal form of `h` with rewrite sites chosen at random.
pub fn reduce_randomized(h: &FreePoly, f: &FreePoly, seed: u64) -> Result<FreePoly> {
    let mut rng = seeded(seed);
    reduce_by(h, f, |s| rng.gen_range(0..s.len()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Membership {
    Yes,
    No { normal_form: FreePoly },
}

impl Membership {
    pub fn is_yes(&self) -> bool {
        matches!(self, Membership::Yes)
    }
}

/// `h ∈ (f − y*y)` iff its normal form vanishes.
pub fn is_member(h: &FreePoly, f: &FreePoly) -> Result<Membership> {
    let nf = reduce(h, f)?;
    Ok(if nf.is_zero() { Membership::Yes } else { Membership::No { normal_form: nf } })
}

/// `f − y*y`.
pub fn generator(f: &FreePoly) -> FreePoly {
    f - &(&FreePoly::y_star() * &FreePoly::y())
}
