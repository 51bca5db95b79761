use std::sync::Arc;

use super::{congruence_generated, quotient_named};
use crate::algebra::{descend, homomorphisms, Algebra, Homomorphism};
use crate::error::{Error, Result};

/// The pushout of a surjection `q : X -> Y` and a map `delta : X -> S`:
///
/// ```text
///   X ---delta---> S
///   |              |
///   q              c = from_target
///   v              v
///   Y --delta_bar-> C = apex
/// ```
#[derive(Clone, Debug)]
pub struct PushoutResult {
    pub apex: Arc<Algebra>,
    /// `delta_bar : Y -> C`.
    pub from_codomain: Homomorphism,
    /// `c : S -> C`, surjective.
    pub from_target: Homomorphism,
    /// `f_bar : C -> Y` with `f_bar ∘ delta_bar = id`, when a splitting of
    /// `delta` was supplied.
    pub retraction: Option<Homomorphism>,
    pub epi: Homomorphism,
    pub leg: Homomorphism,
}

/// `C = S / Cg{(delta a, delta b) : q a = q b}`, with `c` the projection and
/// `delta_bar` induced through `q`.
pub fn pushout_along_regular_epi(q: &Homomorphism, delta: &Homomorphism) -> Result<PushoutResult> {
    pushout_named(q, delta, &format!("{}+{}", q.cod().name(), delta.cod().name()))
}

pub fn pushout_named(q: &Homomorphism, delta: &Homomorphism, name: &str) -> Result<PushoutResult> {
    if *q.dom() != *delta.dom() {
        return Err(Error::Mismatch("pushout legs have different domains".into()));
    }
    if !q.is_surjective() {
        return Err(Error::NotSurjective(format!(
            "`{}` -> `{}`",
            q.dom().name(),
            q.cod().name()
        )));
    }
    let mut first = vec![usize::MAX; q.cod().size()];
    let mut pairs = Vec::new();
    for x in q.dom().elements() {
        let y = q.at(x);
        if first[y] == usize::MAX {
            first[y] = x;
        } else {
            pairs.push((delta.at(first[y]), delta.at(x)));
        }
    }
    let theta = congruence_generated(delta.cod(), &pairs)?;
    let (apex, c) = quotient_named(&theta, name)?;
    let delta_bar = descend(q, &c.after(delta)?)?;
    Ok(PushoutResult {
        apex,
        from_codomain: delta_bar,
        from_target: c,
        retraction: None,
        epi: q.clone(),
        leg: delta.clone(),
    })
}

/// Given a splitting `f : S -> X` of `delta`, the induced `f_bar : C -> Y`
/// with `f_bar ∘ c = q ∘ f`; checks `f_bar ∘ delta_bar = id`.
pub fn split_pushout_retraction(p: &PushoutResult, f: &Homomorphism) -> Result<Homomorphism> {
    if !f.after(&p.leg)?.is_identity() {
        return Err(Error::NotSplitting(format!(
            "`{}` -> `{}` is not a retraction of the pushout leg",
            f.dom().name(),
            f.cod().name()
        )));
    }
    let f_bar = descend(&p.from_target, &p.epi.after(f)?)?;
    if !f_bar.after(&p.from_codomain)?.is_identity() {
        return Err(Error::Construction(
            "induced retraction does not split the pushout leg".into(),
        ));
    }
    Ok(f_bar)
}

impl PushoutResult {
    /// Same pushout with the retraction induced by `f` attached.
    pub fn with_retraction(mut self, f: &Homomorphism) -> Result<Self> {
        self.retraction = Some(split_pushout_retraction(&self, f)?);
        Ok(self)
    }
}

/// Checks the universal property against every algebra in `targets`: cocones
/// `(u : Y -> Z, v : S -> Z)` with `u q = v delta` correspond bijectively to
/// maps `w : C -> Z` via `w ↦ (w delta_bar, w c)`.
pub fn verify_pushout_universal(p: &PushoutResult, targets: &[Arc<Algebra>]) -> Result<bool> {
    for z in targets {
        if !z.same_signature(&p.apex) {
            continue;
        }
        let from_y = homomorphisms(p.epi.cod(), z)?;
        let from_s = homomorphisms(p.leg.cod(), z)?;
        let mut cocones = 0;
        for u in &from_y {
            let uq = u.after(&p.epi)?;
            for v in &from_s {
                if v.after(&p.leg)? != uq {
                    continue;
                }
                cocones += 1;
                let Ok(w) = descend(&p.from_target, v) else {
                    return Ok(false);
                };
                if w.after(&p.from_codomain)? != *u {
                    return Ok(false);
                }
            }
        }
        if cocones != homomorphisms(&p.apex, z)?.len() {
            return Ok(false);
        }
    }
    Ok(true)
}
