//! Partial credit by approximated density difference.
//!
//! With `L1` the student language, `L2` the reference language and `k` the
//! state count of the minimal total DFA for `L2`:
//!
//! ```text
//! d = 1/(2k+1) * Σ_{n=0}^{2k} |(L1 ⊕ L2) ∩ Σ^n| / max(|L2 ∩ Σ^n|, 1)
//! ```
//!
//! and the score is `max(0, 1 - d)`. The measure is not symmetric: the
//! reference supplies both `k` and the denominators.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::automaton::{AutomatonError, Dfa};
use crate::counting::count_words;

/// One term of the density sum.
#[derive(Clone, PartialEq, Debug)]
pub struct LengthRatio {
    pub n: usize,
    pub mismatched: BigUint,
    pub reference: BigUint,
    pub ratio: f64,
}

#[derive(Clone, PartialEq, Debug)]
pub struct PartialCreditResult {
    pub density_difference: f64,
    pub k: usize,
    pub per_length: Vec<LengthRatio>,
    pub score: f64,
}

#[derive(Serialize)]
struct LengthRatioJson<'a> {
    n: usize,
    mismatched: String,
    reference: String,
    ratio: &'a f64,
}

impl Serialize for LengthRatio {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LengthRatioJson {
            n: self.n,
            mismatched: self.mismatched.to_string(),
            reference: self.reference.to_string(),
            ratio: &self.ratio,
        }
        .serialize(s)
    }
}

/// `num / den` as a float without overflowing on huge counts.
fn ratio(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let shift = num.bits().max(den.bits()).saturating_sub(1000);
    let (n, d) = (num >> shift, den >> shift);
    n.to_f64().unwrap_or(f64::INFINITY) / d.to_f64().unwrap_or(f64::INFINITY)
}

pub fn partial_credit(student: &Dfa, reference: &Dfa) -> Result<PartialCreditResult, AutomatonError> {
    let diff = student.symmetric_difference(reference)?;
    let k = reference.minimize().num_states();
    let bound = 2 * k;
    let mismatched = count_words(&diff, bound);
    let accepted = count_words(reference, bound);
    let one = BigUint::from(1u8);
    let per_length: Vec<LengthRatio> = (0..=bound)
        .map(|n| {
            let m = mismatched.counts()[n].clone();
            let r = accepted.counts()[n].clone();
            let ratio = ratio(&m, if r.is_zero() { &one } else { &r });
            LengthRatio {
                n,
                mismatched: m,
                reference: r,
                ratio,
            }
        })
        .collect();
    let density_difference = per_length.iter().map(|l| l.ratio).sum::<f64>() / (bound + 1) as f64;
    let score = if density_difference == 0.0 {
        1.0
    } else {
        (1.0 - density_difference).clamp(0.0, 1.0)
    };
    Ok(PartialCreditResult {
        density_difference,
        k,
        per_length,
        score,
    })
}
