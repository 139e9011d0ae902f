//! Monodromy factorizations of Lefschetz fibrations and their numeric
//! invariants.

use std::fmt;

use crate::error::{Error, Result};
use crate::mapping::{apply_mapping_class, transvection_matrix, MappingClass, SymplecticMatrix};
use crate::words::{check_same_genus, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CycleKind {
    Nonseparating,
    /// Separating curve cutting off a genus-`h` subsurface, `h ≤ g/2`.
    Separating(u32),
}

impl fmt::Display for CycleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleKind::Nonseparating => f.write_str("nonsep"),
            CycleKind::Separating(h) => write!(f, "sep {h}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VanishingCycle {
    pub word: Word,
    pub kind: CycleKind,
}

impl VanishingCycle {
    /// Normalizes a separating type `h` to `min(h, g - h)` and rejects types
    /// outside `1..=g/2`. Kind/homology agreement is left to [`validate`].
    pub fn new(word: Word, kind: CycleKind) -> Result<Self> {
        let g = word.genus();
        let kind = match kind {
            CycleKind::Separating(h) => {
                if h == 0 || h >= g {
                    return Err(Error::InvalidSeparatingType { h, genus: g });
                }
                CycleKind::Separating(h.min(g - h))
            }
            k => k,
        };
        Ok(VanishingCycle { word, kind })
    }

    pub fn nonseparating(word: Word) -> Self {
        VanishingCycle {
            word,
            kind: CycleKind::Nonseparating,
        }
    }

    /// Nonseparating exactly when the homology class is nonzero.
    pub fn kind_consistent(&self) -> bool {
        let zero = self.word.homology_class().is_zero();
        match self.kind {
            CycleKind::Nonseparating => !zero,
            CycleKind::Separating(_) => zero,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonodromyFactorization {
    fiber_genus: u32,
    base_genus: u32,
    cycles: Vec<VanishingCycle>,
}

impl MonodromyFactorization {
    pub fn new(fiber_genus: u32, base_genus: u32, cycles: Vec<VanishingCycle>) -> Result<Self> {
        if fiber_genus == 0 {
            return Err(Error::ZeroGenus);
        }
        for c in &cycles {
            check_same_genus(fiber_genus, c.word.genus())?;
        }
        Ok(MonodromyFactorization {
            fiber_genus,
            base_genus,
            cycles,
        })
    }

    pub fn empty(fiber_genus: u32) -> Result<Self> {
        Self::new(fiber_genus, 0, Vec::new())
    }

    pub fn fiber_genus(&self) -> u32 {
        self.fiber_genus
    }

    pub fn base_genus(&self) -> u32 {
        self.base_genus
    }

    pub fn cycles(&self) -> &[VanishingCycle] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// `(#nonseparating, [(h, #separating of type h)])` with `h` ascending.
    pub fn kind_census(&self) -> (usize, Vec<(u32, usize)>) {
        let nonsep = self
            .cycles
            .iter()
            .filter(|c| c.kind == CycleKind::Nonseparating)
            .count();
        let mut sep: Vec<(u32, usize)> = Vec::new();
        for c in &self.cycles {
            if let CycleKind::Separating(h) = c.kind {
                match sep.iter_mut().find(|(k, _)| *k == h) {
                    Some((_, n)) => *n += 1,
                    None => sep.push((h, 1)),
                }
            }
        }
        sep.sort_unstable();
        (nonsep, sep)
    }

    fn require_sphere_base(&self, what: &str) -> Result<()> {
        if self.base_genus != 0 {
            return Err(Error::Unsupported(format!(
                "{what} requires base S^2, got base genus {}",
                self.base_genus
            )));
        }
        Ok(())
    }
}

/// The curves `β1, ..., β4` on the genus-2 surface, with `β2` separating.
pub fn matsumoto_curves() -> [VanishingCycle; 4] {
    let w = |s: &str| Word::parse(s, 2).expect("built-in word");
    [
        VanishingCycle::nonseparating(w("b1 b2")),
        VanishingCycle {
            word: w("a1 b1 a1^-1 b1^-1"),
            kind: CycleKind::Separating(1),
        },
        VanishingCycle::nonseparating(w("b2 a2 b2^-1 a1")),
        VanishingCycle::nonseparating(w("b2 a2 a1 b1")),
    ]
}

/// `(β1, β2, β3, β4)^2`, a genus-2 fibration on `S^2 × T^2 # 4 CP^2-bar`.
pub fn matsumoto_factorization() -> MonodromyFactorization {
    let curves = matsumoto_curves();
    MonodromyFactorization {
        fiber_genus: 2,
        base_genus: 0,
        cycles: curves.iter().chain(curves.iter()).cloned().collect(),
    }
}

/// `F1` followed by the image of `F2` under `phi`.
pub fn twisted_fiber_sum(
    f1: &MonodromyFactorization,
    f2: &MonodromyFactorization,
    phi: &MappingClass,
) -> Result<MonodromyFactorization> {
    check_same_genus(f1.fiber_genus, f2.fiber_genus)?;
    check_same_genus(f1.fiber_genus, phi.genus())?;
    f1.require_sphere_base("fiber sum")?;
    f2.require_sphere_base("fiber sum")?;
    let mut cycles = f1.cycles.clone();
    for c in &f2.cycles {
        cycles.push(VanishingCycle {
            word: apply_mapping_class(phi, &c.word)?,
            kind: c.kind,
        });
    }
    Ok(MonodromyFactorization {
        fiber_genus: f1.fiber_genus,
        base_genus: 0,
        cycles,
    })
}

/// Matsumoto's fibration fiber-summed with its own conjugate by `D(a2)^n`.
pub fn build_bn(n: i64) -> Result<MonodromyFactorization> {
    if n < 1 {
        return Err(Error::InvalidN(n));
    }
    let m = matsumoto_factorization();
    let h = MappingClass::twist(crate::words::Generator::a(2), n, 2)?;
    twisted_fiber_sum(&m, &m, &h)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub h1_monodromy_trivial: bool,
    pub kind_consistent: bool,
    /// Cycles whose declared kind disagrees with their homology class.
    pub offending_indices: Vec<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.h1_monodromy_trivial && self.kind_consistent
    }
}

/// The `H_1` monodromy `T_{c_k} ⋯ T_{c_1}`: the first-listed cycle acts first.
pub fn h1_monodromy(f: &MonodromyFactorization) -> Result<SymplecticMatrix> {
    f.cycles
        .iter()
        .try_fold(SymplecticMatrix::identity(f.fiber_genus), |acc, c| {
            transvection_matrix(&c.word.homology_class())?.compose(&acc)
        })
}

pub fn validate(f: &MonodromyFactorization) -> Result<ValidationReport> {
    let offending_indices: Vec<usize> = f
        .cycles
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.kind_consistent())
        .map(|(i, _)| i)
        .collect();
    Ok(ValidationReport {
        h1_monodromy_trivial: h1_monodromy(f)?.is_identity(),
        kind_consistent: offending_indices.is_empty(),
        offending_indices,
    })
}

/// `χ = (2 - 2g)(2 - 2·base_genus) + #cycles`.
pub fn euler_characteristic(f: &MonodromyFactorization) -> i64 {
    let g = i64::from(f.fiber_genus);
    let h = i64::from(f.base_genus);
    (2 - 2 * g) * (2 - 2 * h) + f.cycles.len() as i64
}

/// Signature from the hyperelliptic (Endo) formula
/// `σ = -(g+1)/(2g+1)·s0 + Σ_h (4h(g-h)/(2g+1) - 1)·s_h`.
///
/// Genus 2 is always hyperelliptic; other genera need `assume_hyperelliptic`.
pub fn signature_hyperelliptic(
    f: &MonodromyFactorization,
    assume_hyperelliptic: bool,
) -> Result<i64> {
    let g = i64::from(f.fiber_genus);
    if g != 2 && !assume_hyperelliptic {
        return Err(Error::Unsupported(format!(
            "hyperelliptic signature formula needs genus 2 or an explicit hyperellipticity assertion (genus {g})"
        )));
    }
    let denom = 2 * g + 1;
    let (s0, sep) = f.kind_census();
    let mut numer = -(g + 1) * s0 as i64;
    for (h, count) in sep {
        let h = i64::from(h);
        numer += (4 * h * (g - h) - denom) * count as i64;
    }
    if numer % denom != 0 {
        return Err(Error::Inconsistent(format!(
            "signature {numer}/{denom} is not an integer; the kind census is invalid"
        )));
    }
    Ok(numer / denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matsumoto_shape() {
        let m = matsumoto_factorization();
        assert_eq!(m.len(), 8);
        assert_eq!(m.cycles()[3].word.to_string(), "b2 a2 a1 b1");
        assert_eq!(m.kind_census(), (6, vec![(1, 2)]));
        assert!(m.cycles().iter().all(|c| c.kind_consistent()));
    }

    #[test]
    fn bn_shape() {
        for n in [1, 2, 7] {
            let b = build_bn(n).unwrap();
            assert_eq!(b.len(), 16);
            assert_eq!(
                b.cycles()[8].word,
                Word::parse(&format!("b1 b2 a2^{n}"), 2).unwrap()
            );
            assert_eq!(
                b.cycles()[11].word,
                Word::parse(&format!("b2 a2^{} a1 b1", n + 1), 2).unwrap()
            );
            assert_eq!(b.cycles()[9], b.cycles()[1]);
            assert_eq!(b.cycles()[10], b.cycles()[2]);
            assert_eq!(b.kind_census(), (12, vec![(1, 4)]));
        }
        assert_eq!(
            build_bn(1).unwrap().cycles()[8].word.to_string(),
            "b1 b2 a2"
        );
        assert_eq!(build_bn(0), Err(Error::InvalidN(0)));
    }

    #[test]
    fn fiber_sum_identity_and_genus() {
        let m = matsumoto_factorization();
        let empty = MonodromyFactorization::empty(2).unwrap();
        let id = MappingClass::identity(2);
        assert_eq!(twisted_fiber_sum(&m, &empty, &id).unwrap(), m);
        let g3 = MonodromyFactorization::empty(3).unwrap();
        assert!(twisted_fiber_sum(&m, &g3, &id).is_err());
        let higher = MonodromyFactorization::new(2, 1, vec![]).unwrap();
        assert!(matches!(
            twisted_fiber_sum(&m, &higher, &id),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn validation() {
        let empty = MonodromyFactorization::empty(2).unwrap();
        assert!(validate(&empty).unwrap().is_valid());
        assert!(
            validate(&matsumoto_factorization())
                .unwrap()
                .h1_monodromy_trivial
        );
        let single = MonodromyFactorization::new(
            2,
            0,
            vec![VanishingCycle::nonseparating(Word::parse("a1", 2).unwrap())],
        )
        .unwrap();
        let r = validate(&single).unwrap();
        assert!(!r.h1_monodromy_trivial);
        assert!(r.kind_consistent);

        let bad = MonodromyFactorization::new(
            2,
            0,
            vec![
                VanishingCycle::nonseparating(Word::parse("a1 b1 a1^-1 b1^-1", 2).unwrap()),
                VanishingCycle::new(Word::parse("a1", 2).unwrap(), CycleKind::Separating(1))
                    .unwrap(),
            ],
        )
        .unwrap();
        let r = validate(&bad).unwrap();
        assert!(!r.kind_consistent);
        assert_eq!(r.offending_indices, vec![0, 1]);
    }

    #[test]
    fn separating_type_normalization() {
        let w = Word::parse("a1 b1 a1^-1 b1^-1", 5).unwrap();
        let c = VanishingCycle::new(w.clone(), CycleKind::Separating(4)).unwrap();
        assert_eq!(c.kind, CycleKind::Separating(1));
        assert!(VanishingCycle::new(w.clone(), CycleKind::Separating(0)).is_err());
        assert!(VanishingCycle::new(w, CycleKind::Separating(5)).is_err());
        let w1 = Word::parse("a1", 1).unwrap();
        assert!(VanishingCycle::new(w1, CycleKind::Separating(1)).is_err());
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(
            euler_characteristic(&MonodromyFactorization::empty(2).unwrap()),
            -4
        );
        assert_eq!(euler_characteristic(&matsumoto_factorization()), 4);
        for n in 1..10 {
            assert_eq!(euler_characteristic(&build_bn(n).unwrap()), 12);
        }
        let torus_base = MonodromyFactorization::new(2, 1, vec![]).unwrap();
        assert_eq!(euler_characteristic(&torus_base), 0);
    }

    #[test]
    fn signature_examples() {
        assert_eq!(
            signature_hyperelliptic(&MonodromyFactorization::empty(2).unwrap(), false),
            Ok(0)
        );
        assert_eq!(
            signature_hyperelliptic(&matsumoto_factorization(), false),
            Ok(-4)
        );
        assert_eq!(
            signature_hyperelliptic(&build_bn(3).unwrap(), false),
            Ok(-8)
        );
        let g3 = MonodromyFactorization::empty(3).unwrap();
        assert!(matches!(
            signature_hyperelliptic(&g3, false),
            Err(Error::Unsupported(_))
        ));
        assert_eq!(signature_hyperelliptic(&g3, true), Ok(0));
        // A lone nonseparating cycle in genus 2 gives -3/5.
        let one = MonodromyFactorization::new(
            2,
            0,
            vec![VanishingCycle::nonseparating(Word::parse("a1", 2).unwrap())],
        )
        .unwrap();
        assert!(matches!(
            signature_hyperelliptic(&one, false),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn fiber_sum_additivity() {
        let m = matsumoto_factorization();
        let phi = MappingClass::parse("D(a2)^2 D(b1)^-1", 2).unwrap();
        let s = twisted_fiber_sum(&m, &m, &phi).unwrap();
        let base = euler_characteristic(&MonodromyFactorization::empty(2).unwrap());
        assert_eq!(
            euler_characteristic(&s),
            2 * euler_characteristic(&m) - base
        );
        assert_eq!(
            signature_hyperelliptic(&s, false).unwrap(),
            2 * signature_hyperelliptic(&m, false).unwrap()
        );
        assert!(validate(&s).unwrap().is_valid());
    }
}
