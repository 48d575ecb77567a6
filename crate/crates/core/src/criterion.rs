//! Combinatorial test for linear resolutions in `k[x, y, z]`.
//!
//! An ideal generated in degree `d` has a linear resolution iff it is
//! linearly presented and no monomial induces a bad configuration. A monomial
//! `f` induces a bad configuration when its `d`-shadow is nonempty and misses
//! `I`, while the `d`-shadows of `fx`, `fy` and `fz` each contain a generator.
//! Such `f` are exactly the socle monomials of `S/I` of degree at least `d`.

use serde::Serialize;

use crate::dual_graph::{is_linearly_presented, DisconnectedPair, PresentationVerdict};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

/// Evidence that `inducer` induces a bad configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BadConfigWitness {
    pub inducer: Monomial,
    /// The `d`-shadow of the inducer; none of these lie in `I`.
    pub shadow: Vec<Monomial>,
    /// Generators in the `d`-shadows of `f·x`, `f·y`, `f·z` (smallest in
    /// canonical order).
    pub hit_x: Monomial,
    pub hit_y: Monomial,
    pub hit_z: Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResolutionVerdict {
    Linear,
    /// Not linearly presented.
    Disconnected(DisconnectedPair),
    BadConfiguration(BadConfigWitness),
}

impl ResolutionVerdict {
    pub fn is_linear(&self) -> bool {
        matches!(self, ResolutionVerdict::Linear)
    }
}

/// The degree-`d` divisors of `f`, in canonical order. Empty iff `deg f < d`.
pub fn d_shadow(f: &Monomial, d: u32) -> Vec<Monomial> {
    fn fill(bound: &[u32], prefix: &mut Vec<u32>, rest: u32, out: &mut Vec<Monomial>) {
        let i = prefix.len();
        if i + 1 == bound.len() {
            if rest <= bound[i] {
                prefix.push(rest);
                out.push(Monomial::new(prefix));
                prefix.pop();
            }
            return;
        }
        let tail: u32 = bound[i + 1..].iter().sum();
        let lo = rest.saturating_sub(tail);
        let hi = rest.min(bound[i]);
        for e in (lo..=hi).rev() {
            prefix.push(e);
            fill(bound, prefix, rest - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if f.num_vars() == 0 {
        return out;
    }
    if f.degree() >= d {
        fill(f.exponents(), &mut Vec::new(), d, &mut out);
    }
    out
}

/// The level of a monomial in `k[x, y, z]` is its `z`-degree.
pub fn level(m: &Monomial) -> Result<u32> {
    if m.num_vars() != 3 {
        return Err(Error::WrongVariableCount {
            expected: 3,
            found: m.num_vars(),
        });
    }
    Ok(m.exponent(2))
}

fn require_three_var_equigenerated(ideal: &MonomialIdeal) -> Result<u32> {
    ideal.require_vars(3)?;
    ideal.require_equigenerated()
}

/// Monomials `f ∉ I` with `fx, fy, fz ∈ I`, in canonical order.
///
/// Only the box `[0, d-1]^3` is searched: if a generator `g` divides `f·x_i`
/// but not `f`, then `g_i = f_i + 1`, and `g_i <= deg g = d`.
pub fn socle_monomials(ideal: &MonomialIdeal) -> Result<Vec<Monomial>> {
    let d = require_three_var_equigenerated(ideal)?;
    let mut out = Vec::new();
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                let mut exps = [a, b, c];
                if ideal.contains_exps(&exps) {
                    continue;
                }
                let killed = (0..3).all(|v| {
                    exps[v] += 1;
                    let inside = ideal.contains_exps(&exps);
                    exps[v] -= 1;
                    inside
                });
                if killed {
                    out.push(Monomial::new(&exps));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Tests whether `f` induces a bad configuration, returning the witness.
pub fn induces_bad_configuration(
    ideal: &MonomialIdeal,
    f: &Monomial,
) -> Result<Option<BadConfigWitness>> {
    let d = require_three_var_equigenerated(ideal)?;
    if f.num_vars() != 3 {
        return Err(Error::VariableCountMismatch {
            expected: 3,
            found: f.num_vars(),
        });
    }
    let shadow = d_shadow(f, d);
    if shadow.is_empty() || shadow.iter().any(|s| ideal.contains_exps(s.exponents())) {
        return Ok(None);
    }
    let mut hits = Vec::with_capacity(3);
    for v in 0..3 {
        let fv = f.times_var(v)?;
        // Generators have degree d, so any generator dividing f·v is in its d-shadow.
        match ideal.generators().iter().find(|g| g.divides_same(&fv)) {
            Some(g) => hits.push(g.clone()),
            None => return Ok(None),
        }
    }
    let hit_z = hits.pop().unwrap();
    let hit_y = hits.pop().unwrap();
    let hit_x = hits.pop().unwrap();
    Ok(Some(BadConfigWitness {
        inducer: f.clone(),
        shadow,
        hit_x,
        hit_y,
        hit_z,
    }))
}

/// Finds a bad configuration through the socle: some socle monomial of `S/I`
/// has degree at least `d` iff a bad configuration exists. The smallest such
/// monomial in canonical order becomes the inducer.
pub fn find_bad_configuration(ideal: &MonomialIdeal) -> Result<Option<BadConfigWitness>> {
    let d = require_three_var_equigenerated(ideal)?;
    let Some(f) = socle_monomials(ideal)?
        .into_iter()
        .find(|f| f.degree() >= d)
    else {
        return Ok(None);
    };
    match induces_bad_configuration(ideal, &f)? {
        Some(w) => Ok(Some(w)),
        None => Err(Error::Internal(format!(
            "socle monomial {f} of degree >= {d} does not induce a bad configuration"
        ))),
    }
}

/// Linear resolution test. Connectivity is checked first; when it fails the
/// disconnected pair is the witness, otherwise a bad configuration is.
pub fn has_linear_resolution_criterion(ideal: &MonomialIdeal) -> Result<ResolutionVerdict> {
    require_three_var_equigenerated(ideal)?;
    if let PresentationVerdict::Disconnected(pair) = is_linearly_presented(ideal)? {
        return Ok(ResolutionVerdict::Disconnected(pair));
    }
    Ok(match find_bad_configuration(ideal)? {
        Some(w) => ResolutionVerdict::BadConfiguration(w),
        None => ResolutionVerdict::Linear,
    })
}
