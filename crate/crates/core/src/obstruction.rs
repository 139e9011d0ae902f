//! Numeric invariants of a fibration's total space and the exclusion tests
//! that rule out each class of minimal complex surface with `b1 = 1`.
//!
//! Only arithmetic is certified here. The classification results and the
//! symplectic inputs the tests rely on travel with each verdict as named
//! premises.

use std::fmt;

use crate::error::{Error, Result};
use crate::fibration::{
    euler_characteristic, signature_hyperelliptic, validate, MonodromyFactorization,
};
use crate::presentation::{abelianization, total_space_pi1, AbelianInvariants, Presentation};

/// Homotopy-level numbers of a closed oriented 4-manifold.
///
/// `b2 = chi - 2 + 2·b1` (Poincaré duality gives `b3 = b1`),
/// `b2_plus + b2_minus = b2` and `b2_plus - b2_minus = sigma`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantReport {
    pub chi: i64,
    pub sigma: i64,
    pub b1: i64,
    pub b2: i64,
    pub b2_plus: i64,
    pub b2_minus: i64,
    pub h1: AbelianInvariants,
    pub hyperelliptic: bool,
}

impl InvariantReport {
    /// Derives `b2` and `b2±` from `chi`, `sigma` and `b1`.
    pub fn from_parts(
        chi: i64,
        sigma: i64,
        b1: i64,
        h1: AbelianInvariants,
        hyperelliptic: bool,
    ) -> Result<Self> {
        let overflow = || Error::Overflow("invariant report");
        let b2 = b1
            .checked_mul(2)
            .and_then(|x| x.checked_add(chi))
            .and_then(|x| x.checked_sub(2))
            .ok_or_else(overflow)?;
        if b1 < 0 || b2 < 0 {
            return Err(Error::Inconsistent(format!(
                "negative Betti number: b1 = {b1}, b2 = {b2}"
            )));
        }
        let plus2 = b2.checked_add(sigma).ok_or_else(overflow)?;
        let minus2 = b2.checked_sub(sigma).ok_or_else(overflow)?;
        if plus2 % 2 != 0 {
            return Err(Error::Inconsistent(format!(
                "b2 = {b2} and sigma = {sigma} have different parity"
            )));
        }
        let (b2_plus, b2_minus) = (plus2 / 2, minus2 / 2);
        if b2_plus < 0 || b2_minus < 0 {
            return Err(Error::Inconsistent(format!(
                "|sigma| = {} exceeds b2 = {b2}",
                sigma.unsigned_abs()
            )));
        }
        Ok(InvariantReport {
            chi,
            sigma,
            b1,
            b2,
            b2_plus,
            b2_minus,
            h1,
            hyperelliptic,
        })
    }

    /// The three linear identities hold and every Betti number is nonnegative.
    pub fn is_consistent(&self) -> bool {
        self.b2 == self.chi - 2 + 2 * self.b1
            && self.b2_plus + self.b2_minus == self.b2
            && self.b2_plus - self.b2_minus == self.sigma
            && self.b1 >= 0
            && self.b2_plus >= 0
            && self.b2_minus >= 0
    }

    pub fn is_indefinite(&self) -> bool {
        self.b2_plus > 0 && self.b2_minus > 0
    }

    /// Stable `key=value` pairs.
    pub fn key_values(&self) -> Vec<(&'static str, String)> {
        vec![
            ("chi", self.chi.to_string()),
            ("sigma", self.sigma.to_string()),
            ("b1", self.b1.to_string()),
            ("b2", self.b2.to_string()),
            ("b2+", self.b2_plus.to_string()),
            ("b2-", self.b2_minus.to_string()),
            ("h1", self.h1.to_string()),
            ("hyperelliptic", self.hyperelliptic.to_string()),
        ]
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "chi={} sigma={} b1={} b2={} b2+={} b2-={}",
            self.chi, self.sigma, self.b1, self.b2, self.b2_plus, self.b2_minus
        )
    }
}

/// Invariants of the total space. The factorization must pass
/// [`validate`]; genus other than 2 needs `assume_hyperelliptic`.
pub fn invariant_report(
    f: &MonodromyFactorization,
    assume_hyperelliptic: bool,
) -> Result<InvariantReport> {
    let v = validate(f)?;
    if !v.h1_monodromy_trivial {
        return Err(Error::Inconsistent(
            "monodromy is not trivial on H1; not a fibration over S^2".into(),
        ));
    }
    if !v.kind_consistent {
        return Err(Error::Inconsistent(format!(
            "cycle kinds disagree with homology at indices {:?}",
            v.offending_indices
        )));
    }
    let sigma = signature_hyperelliptic(f, assume_hyperelliptic)?;
    let h1 = abelianization(&total_space_pi1(f)?)?;
    InvariantReport::from_parts(euler_characteristic(f), sigma, h1.rank as i64, h1, true)
}

pub fn orientation_reverse(r: &InvariantReport) -> InvariantReport {
    InvariantReport {
        sigma: -r.sigma,
        b2_plus: r.b2_minus,
        b2_minus: r.b2_plus,
        ..r.clone()
    }
}

/// Invariants of a degree-`degree` finite cover: `chi` and `sigma` scale,
/// `b1` comes from the caller and `h1` is taken to be `Z^b1`.
pub fn cover_invariants(r: &InvariantReport, degree: i64, b1: i64) -> Result<InvariantReport> {
    if degree < 1 {
        return Err(Error::InvalidDegree(degree));
    }
    let overflow = || Error::Overflow("cover invariants");
    let chi = r.chi.checked_mul(degree).ok_or_else(overflow)?;
    let sigma = r.sigma.checked_mul(degree).ok_or_else(overflow)?;
    let rank = usize::try_from(b1)
        .map_err(|_| Error::Inconsistent(format!("negative b1 = {b1} for the cover")))?;
    InvariantReport::from_parts(
        chi,
        sigma,
        b1,
        AbelianInvariants::free(rank),
        r.hyperelliptic,
    )
}

/// What is known about the fundamental group fed to the exclusion tests.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Pi1Class {
    InfiniteCyclic,
    RankOneWithTorsion(i64),
    Other { rank: usize, torsion: Vec<i64> },
}

impl Pi1Class {
    /// `InfiniteCyclic` only when `simplified` is literally `⟨x | ⟩`;
    /// otherwise the descriptor is read off `h1`.
    pub fn classify(simplified: &Presentation, h1: &AbelianInvariants) -> Pi1Class {
        if simplified.generator_count() == 1 && simplified.relators().is_empty() {
            return Pi1Class::InfiniteCyclic;
        }
        match (h1.rank, h1.torsion.as_slice()) {
            (1, &[n]) => Pi1Class::RankOneWithTorsion(n),
            _ => Pi1Class::Other {
                rank: h1.rank,
                torsion: h1.torsion.clone(),
            },
        }
    }
}

impl fmt::Display for Pi1Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pi1Class::InfiniteCyclic => f.write_str("Z"),
            Pi1Class::RankOneWithTorsion(n) => write!(f, "Z + Z/{n} (H1 level)"),
            Pi1Class::Other { rank, torsion } => write!(
                f,
                "{} (H1 level)",
                AbelianInvariants {
                    rank: *rank,
                    torsion: torsion.clone()
                }
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KodairaClass {
    ClassVII,
    SecondaryKodaira,
    EllipticChiZero,
    EllipticOverS2,
}

impl KodairaClass {
    pub const ALL: [KodairaClass; 4] = [
        KodairaClass::ClassVII,
        KodairaClass::SecondaryKodaira,
        KodairaClass::EllipticChiZero,
        KodairaClass::EllipticOverS2,
    ];
}

impl fmt::Display for KodairaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KodairaClass::ClassVII => "VII",
            KodairaClass::SecondaryKodaira => "secondary-kodaira",
            KodairaClass::EllipticChiZero => "elliptic-chi-zero",
            KodairaClass::EllipticOverS2 => "elliptic-over-s2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExclusionVerdict {
    pub kodaira_class: KodairaClass,
    pub excluded: bool,
    pub reason: String,
    pub premises: Vec<&'static str>,
}

impl fmt::Display for ExclusionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "class={} excluded={} reason=\"{}\" premises=[{}]",
            self.kodaira_class,
            self.excluded,
            self.reason,
            self.premises.join(",")
        )
    }
}

pub const PREMISE_CLASSIFICATION: &str = "enriques-kodaira-b1-one";
pub const PREMISE_SYMPLECTIC: &str = "symplectic-b2plus-positive";
pub const PREMISE_MINIMAL_MODEL: &str = "minimal-model-symplectic";
pub const PREMISE_BLOWDOWN: &str = "blowdown-lowers-only-b2minus";
pub const PREMISE_DUALITY: &str = "poincare-duality-b3-equals-b1";
pub const PREMISE_ORBIFOLD: &str = "elliptic-over-s2-orbifold-pi1";

/// One verdict per class, in the order of [`KodairaClass::ALL`].
pub fn kodaira_exclusion(r: &InvariantReport, pi1: &Pi1Class) -> Vec<ExclusionVerdict> {
    let class_vii = if r.b2_plus > 0 {
        (true, format!("b2+ = {} > 0", r.b2_plus))
    } else {
        (
            false,
            format!("b2+ = {}; class VII surfaces have b2+ = 0", r.b2_plus),
        )
    };

    let secondary = if r.b2 > 0 {
        (
            true,
            format!(
                "b2 = {} > 0 but secondary Kodaira surfaces have b2 = 0",
                r.b2
            ),
        )
    } else {
        (false, "b2 = 0".to_string())
    };

    let forced_b2 = 2 * r.b1 - 2;
    let chi_zero = if forced_b2 == 0 && r.b2 > 0 {
        (
            true,
            format!(
                "chi = 0 with b1 = b3 = {} forces b2 = 0, but b2 = {} > 0",
                r.b1, r.b2
            ),
        )
    } else if forced_b2 != 0 {
        (
            false,
            format!(
                "chi = 0 with b1 = {} forces b2 = {forced_b2}; no contradiction",
                r.b1
            ),
        )
    } else {
        (false, "b2 = 0 is compatible with chi = 0".to_string())
    };

    let over_s2 = match pi1 {
        Pi1Class::InfiniteCyclic => (
            true,
            "pi1 = Z, but in <x_1..x_k | x_i^p_i, x_1...x_k> every generator has finite order"
                .to_string(),
        ),
        other => (
            false,
            format!("pi1 is {other}; the orbifold test needs pi1 = Z"),
        ),
    };

    let premises = |extra: &[&'static str]| {
        let mut p = vec![PREMISE_CLASSIFICATION];
        p.extend_from_slice(extra);
        p
    };
    let verdict = |kodaira_class, (excluded, reason): (bool, String), premises| ExclusionVerdict {
        kodaira_class,
        excluded,
        reason,
        premises,
    };
    vec![
        verdict(
            KodairaClass::ClassVII,
            class_vii,
            premises(&[PREMISE_SYMPLECTIC, PREMISE_MINIMAL_MODEL, PREMISE_BLOWDOWN]),
        ),
        verdict(
            KodairaClass::SecondaryKodaira,
            secondary,
            premises(&[PREMISE_SYMPLECTIC, PREMISE_BLOWDOWN]),
        ),
        verdict(
            KodairaClass::EllipticChiZero,
            chi_zero,
            premises(&[PREMISE_DUALITY, PREMISE_BLOWDOWN]),
        ),
        verdict(
            KodairaClass::EllipticOverS2,
            over_s2,
            premises(&[PREMISE_ORBIFOLD]),
        ),
    ]
}
