//! Dehn twists about the standard generator curves.
//!
//! On `π_1`, a positive twist about `a_i` sends `b_i ↦ b_i a_i` and a
//! positive twist about `b_i` sends `a_i ↦ a_i b_i^-1`; every other generator
//! is fixed. On `H_1` a positive twist about a curve of class `c` is the
//! transvection `x ↦ x + ⟨c, x⟩ c` with `⟨a_i, b_i⟩ = +1`. The two actions
//! agree on abelianization.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;
use crate::words::{check_same_genus, FreeWord, Generator, GeneratorKind, HomologyClass, Word};

/// A product of powers of Dehn twists about generator curves. Factors are
/// listed outermost first: the last factor acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MappingClass {
    genus: u32,
    factors: Vec<(Generator, i64)>,
}

impl MappingClass {
    pub fn identity(genus: u32) -> Self {
        MappingClass {
            genus,
            factors: Vec::new(),
        }
    }

    /// Drops zero powers and merges adjacent factors on the same curve.
    pub fn new<I: IntoIterator<Item = (Generator, i64)>>(genus: u32, factors: I) -> Result<Self> {
        if genus == 0 {
            return Err(Error::ZeroGenus);
        }
        let mut out: Vec<(Generator, i64)> = Vec::new();
        for (curve, power) in factors {
            curve.check_genus(genus)?;
            if power == 0 {
                continue;
            }
            match out.last_mut() {
                Some((c, p)) if *c == curve => {
                    *p = p.checked_add(power).ok_or(Error::Overflow("twist power"))?;
                    if *p == 0 {
                        out.pop();
                    }
                }
                _ => out.push((curve, power)),
            }
        }
        Ok(MappingClass {
            genus,
            factors: out,
        })
    }

    pub fn twist(curve: Generator, power: i64, genus: u32) -> Result<Self> {
        Self::new(genus, [(curve, power)])
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn factors(&self) -> &[(Generator, i64)] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn inverse(&self) -> Self {
        MappingClass {
            genus: self.genus,
            factors: self.factors.iter().rev().map(|&(c, p)| (c, -p)).collect(),
        }
    }

    /// `self ∘ inner`: `inner` acts first.
    pub fn compose(&self, inner: &MappingClass) -> Result<Self> {
        check_same_genus(self.genus, inner.genus)?;
        Self::new(
            self.genus,
            self.factors.iter().chain(inner.factors.iter()).copied(),
        )
    }

    /// Parses `D(a2)^3 D(b1)^-1`; `1` or an empty string is the identity.
    pub fn parse(text: &str, genus: u32) -> Result<Self> {
        let mut factors = Vec::new();
        for (start, token) in crate::words::tokens(text) {
            let syntax = |message: String| Error::Syntax {
                line: 1,
                column: start + 1,
                message,
            };
            if token == "1" {
                continue;
            }
            let rest = token
                .strip_prefix("D(")
                .ok_or_else(|| syntax(format!("expected `D(<generator>)`, found `{token}`")))?;
            let (name, tail) = rest
                .split_once(')')
                .ok_or_else(|| syntax("missing `)`".into()))?;
            let curve = Generator::parse_name(name)
                .ok_or_else(|| syntax(format!("unknown generator `{name}`")))?;
            curve
                .check_genus(genus)
                .map_err(|e| syntax(e.to_string()))?;
            let power = match tail {
                "" => 1,
                t => t
                    .strip_prefix('^')
                    .and_then(|p| p.parse::<i64>().ok())
                    .ok_or_else(|| syntax(format!("invalid power `{t}`")))?,
            };
            factors.push((curve, power));
        }
        Self::new(genus, factors)
    }
}

impl fmt::Display for MappingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (curve, power)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "D({curve})")?;
            if *power != 1 {
                write!(f, "^{power}")?;
            }
        }
        Ok(())
    }
}

/// One substitution pass of `D(curve)^{±1}`.
fn twist_once(curve: Generator, positive: bool, w: &FreeWord) -> FreeWord {
    let moved = curve.dual().flat();
    let along_curve = match curve.kind {
        GeneratorKind::A => positive,
        GeneratorKind::B => !positive,
    };
    let image = FreeWord::reduce([
        crate::words::Letter::new(moved, false),
        crate::words::Letter::new(curve.flat(), !along_curve),
    ]);
    w.substitute(|g| (g == moved).then(|| image.clone()))
}

/// Applies `D(curve)^power` to `w` by `|power|` literal substitution passes.
pub fn twist_word(curve: Generator, power: i64, w: &Word) -> Result<Word> {
    curve.check_genus(w.genus())?;
    let mut free = w.as_free().clone();
    for _ in 0..power.unsigned_abs() {
        free = twist_once(curve, power > 0, &free);
    }
    Word::from_free(free, w.genus())
}

pub fn apply_mapping_class(phi: &MappingClass, w: &Word) -> Result<Word> {
    check_same_genus(phi.genus, w.genus())?;
    phi.factors
        .iter()
        .rev()
        .try_fold(w.clone(), |acc, &(curve, power)| {
            twist_word(curve, power, &acc)
        })
}

/// A `2g × 2g` integer matrix preserving the intersection form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymplecticMatrix(IntegerMatrix);

impl SymplecticMatrix {
    pub fn identity(genus: u32) -> Self {
        SymplecticMatrix(IntegerMatrix::identity(2 * genus as usize))
    }

    /// Checks `Mᵀ J M = J` before wrapping.
    pub fn new(m: IntegerMatrix) -> Result<Self> {
        if m.rows() != m.cols() || !m.rows().is_multiple_of(2) || m.rows() == 0 {
            return Err(Error::Inconsistent(
                "symplectic matrix must be 2g x 2g".into(),
            ));
        }
        let s = SymplecticMatrix(m);
        if !s.is_symplectic()? {
            return Err(Error::Inconsistent(
                "matrix does not preserve the intersection form".into(),
            ));
        }
        Ok(s)
    }

    pub fn genus(&self) -> u32 {
        (self.0.rows() / 2) as u32
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn is_symplectic(&self) -> Result<bool> {
        let j = standard_form(self.genus());
        let lhs = self.0.transpose().checked_mul(&j)?.checked_mul(&self.0)?;
        Ok(lhs == j)
    }

    /// `self · rhs`: `rhs` acts first.
    pub fn compose(&self, rhs: &SymplecticMatrix) -> Result<SymplecticMatrix> {
        Ok(SymplecticMatrix(self.0.checked_mul(&rhs.0)?))
    }

    pub fn apply(&self, x: &HomologyClass) -> Result<HomologyClass> {
        check_same_genus(self.genus(), x.genus())?;
        Ok(HomologyClass {
            coefficients: self.0.checked_mul_vec(&x.coefficients)?,
        })
    }
}

/// The Gram matrix `J` of the intersection form: `J[a_i][b_i] = 1`.
pub fn standard_form(genus: u32) -> IntegerMatrix {
    let n = 2 * genus as usize;
    let mut j = IntegerMatrix::zeros(n, n);
    for i in (0..n).step_by(2) {
        j[(i, i + 1)] = 1;
        j[(i + 1, i)] = -1;
    }
    j
}

/// `T_c^power = I + power · c ⟨c, ·⟩`; powers of one transvection add.
pub fn transvection_power(c: &HomologyClass, power: i64) -> Result<SymplecticMatrix> {
    let n = c.coefficients.len();
    let overflow = || Error::Overflow("transvection");
    let mut m = IntegerMatrix::identity(n);
    for col in 0..n {
        let mut basis = vec![0i64; n];
        basis[col] = 1;
        let pairing = c.intersection(&HomologyClass {
            coefficients: basis,
        });
        let scale = pairing.checked_mul(power).ok_or_else(overflow)?;
        for row in 0..n {
            let delta = scale
                .checked_mul(c.coefficients[row])
                .ok_or_else(overflow)?;
            m[(row, col)] = m[(row, col)].checked_add(delta).ok_or_else(overflow)?;
        }
    }
    Ok(SymplecticMatrix(m))
}

/// `H_1` action of a positive Dehn twist about a curve of class `c`.
pub fn transvection_matrix(c: &HomologyClass) -> Result<SymplecticMatrix> {
    transvection_power(c, 1)
}

pub fn generator_class(curve: Generator, genus: u32) -> HomologyClass {
    let mut c = HomologyClass::zero(genus);
    c.coefficients[curve.flat() as usize] = 1;
    c
}

/// Product of the factors' transvections in listed order, so the matrix
/// acts exactly as [`apply_mapping_class`] does after abelianization.
pub fn h1_action(phi: &MappingClass) -> Result<SymplecticMatrix> {
    phi.factors.iter().try_fold(
        SymplecticMatrix::identity(phi.genus),
        |acc, &(curve, power)| {
            acc.compose(&transvection_power(
                &generator_class(curve, phi.genus),
                power,
            )?)
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    const BETA: [&str; 4] = [
        "b1 b2",
        "a1 b1 a1^-1 b1^-1",
        "b2 a2 b2^-1 a1",
        "b2 a2 a1 b1",
    ];

    #[test]
    fn twisting_the_matsumoto_curves() {
        let a2 = Generator::a(2);
        for n in 1..=12 {
            assert_eq!(
                twist_word(a2, n, &w(BETA[0])).unwrap().to_string(),
                w(&format!("b1 b2 a2^{n}")).to_string()
            );
            assert_eq!(twist_word(a2, n, &w(BETA[1])).unwrap(), w(BETA[1]));
            assert_eq!(twist_word(a2, n, &w(BETA[2])).unwrap(), w(BETA[2]));
            assert_eq!(
                twist_word(a2, n, &w(BETA[3])).unwrap(),
                w(&format!("b2 a2^{} a1 b1", n + 1))
            );
        }
        assert_eq!(twist_word(a2, 0, &w(BETA[3])).unwrap(), w(BETA[3]));
    }

    #[test]
    fn twist_genus_checks() {
        assert!(twist_word(Generator::a(3), 1, &w("a1")).is_err());
        let phi = MappingClass::twist(Generator::a(1), 1, 3).unwrap();
        assert!(matches!(
            apply_mapping_class(&phi, &w("a1")),
            Err(Error::GenusMismatch { .. })
        ));
    }

    #[test]
    fn mapping_class_normalizes() {
        let a2 = Generator::a(2);
        let b1 = Generator::b(1);
        let phi = MappingClass::new(2, [(a2, 2), (a2, -2), (b1, 0), (b1, 3), (b1, 1)]).unwrap();
        assert_eq!(phi.factors(), &[(b1, 4)]);
        assert!(MappingClass::new(2, [(a2, 1), (a2, -1)])
            .unwrap()
            .is_identity());
        assert_eq!(
            apply_mapping_class(&MappingClass::identity(2), &w(BETA[2])).unwrap(),
            w(BETA[2])
        );
    }

    #[test]
    fn mapping_class_literals() {
        let phi = MappingClass::parse("D(a2)^3 D(b1)^-1", 2).unwrap();
        assert_eq!(
            phi.factors(),
            &[(Generator::a(2), 3), (Generator::b(1), -1)]
        );
        assert_eq!(phi.to_string(), "D(a2)^3 D(b1)^-1");
        assert_eq!(
            MappingClass::parse("D(a2)", 2).unwrap().to_string(),
            "D(a2)"
        );
        assert!(MappingClass::parse("1", 2).unwrap().is_identity());
        assert!(MappingClass::parse("D(a3)", 2).is_err());
        assert!(MappingClass::parse("D(a2", 2).is_err());
        assert!(MappingClass::parse("T(a2)", 2).is_err());
        assert!(MappingClass::parse("D(a2)^x", 2).is_err());
    }

    #[test]
    fn outermost_first_composition() {
        // D(a1) D(b1) on a1: D(b1) acts first, a1 -> a1 b1^-1, then D(a1) fixes a1 and
        // sends b1 -> b1 a1.
        let phi = MappingClass::parse("D(a1) D(b1)", 2).unwrap();
        assert_eq!(
            apply_mapping_class(&phi, &w("a1")).unwrap(),
            w("a1 a1^-1 b1^-1")
        );
    }

    #[test]
    fn transvection_examples() {
        assert!(transvection_matrix(&HomologyClass::zero(2))
            .unwrap()
            .is_identity());
        let t = transvection_matrix(&generator_class(Generator::a(2), 2)).unwrap();
        let mut expected = IntegerMatrix::identity(4);
        // b2 (column 3) picks up a2 (row 2).
        expected[(2, 3)] = 1;
        assert_eq!(t.matrix(), &expected);
    }

    #[test]
    fn h1_examples() {
        assert!(h1_action(&MappingClass::identity(2)).unwrap().is_identity());
        for n in 0..8 {
            let phi = MappingClass::twist(Generator::a(2), n, 2).unwrap();
            let img = h1_action(&phi)
                .unwrap()
                .apply(&w(BETA[0]).homology_class())
                .unwrap();
            assert_eq!(img.coefficients, vec![0, 1, n, 1]);
        }
    }

    /// Plain dense product, independent of `SymplecticMatrix::compose`.
    fn dense_product(ms: &[&IntegerMatrix]) -> Vec<Vec<i64>> {
        let n = ms[0].rows();
        let mut acc: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i64).collect())
            .collect();
        for m in ms {
            let mut next = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in 0..n {
                    next[i][j] = (0..n).map(|k| acc[i][k] * m[(k, j)]).sum();
                }
            }
            acc = next;
        }
        acc
    }

    #[test]
    fn braid_relation_on_h1() {
        for i in 1..=2 {
            let ta = transvection_matrix(&generator_class(Generator::a(i), 2)).unwrap();
            let tb = transvection_matrix(&generator_class(Generator::b(i), 2)).unwrap();
            let aba = dense_product(&[ta.matrix(), tb.matrix(), ta.matrix()]);
            let bab = dense_product(&[tb.matrix(), ta.matrix(), tb.matrix()]);
            assert_eq!(aba, bab);
            let via_h1 = h1_action(
                &MappingClass::new(
                    2,
                    [
                        (Generator::a(i), 1),
                        (Generator::b(i), 1),
                        (Generator::a(i), 1),
                    ],
                )
                .unwrap(),
            )
            .unwrap();
            assert_eq!(via_h1.matrix().to_rows(), aba);
        }
        // Disjoint curves commute.
        let ta1 = transvection_matrix(&generator_class(Generator::a(1), 2)).unwrap();
        let tb2 = transvection_matrix(&generator_class(Generator::b(2), 2)).unwrap();
        assert_eq!(
            dense_product(&[ta1.matrix(), tb2.matrix()]),
            dense_product(&[tb2.matrix(), ta1.matrix()])
        );
    }

    #[test]
    fn non_symplectic_rejected() {
        let m = IntegerMatrix::from_rows(vec![vec![2, 0], vec![0, 1]]);
        assert!(SymplecticMatrix::new(m).is_err());
        let t = transvection_matrix(&HomologyClass::new(vec![1, 2, -3, 4]).unwrap()).unwrap();
        assert!(SymplecticMatrix::new(t.matrix().clone()).is_ok());
    }

    fn word3() -> impl Strategy<Value = Word> {
        prop::collection::vec((0u32..6, prop::bool::ANY), 0..16).prop_map(|ls| {
            Word::from_free(
                FreeWord::reduce(ls.into_iter().map(|(g, i)| crate::words::Letter::new(g, i))),
                3,
            )
            .unwrap()
        })
    }

    fn curve3() -> impl Strategy<Value = Generator> {
        (0u32..6).prop_map(Generator::from_flat)
    }

    proptest! {
        #[test]
        fn twist_powers_add(c in curve3(), m in -4i64..5, n in -4i64..5, x in word3()) {
            let lhs = twist_word(c, m, &twist_word(c, n, &x).unwrap()).unwrap();
            prop_assert_eq!(lhs, twist_word(c, m + n, &x).unwrap());
        }

        #[test]
        fn twist_fixes_words_without_dual(i in 1u32..4, n in -5i64..6, x in word3()) {
            let a = Generator::a(i);
            prop_assume!(x.letters().all(|(g, _)| g != a.dual()));
            prop_assert_eq!(twist_word(a, n, &x).unwrap(), x);
        }

        #[test]
        fn transvections_are_symplectic(c in prop::collection::vec(-6i64..7, 6)) {
            let t = transvection_matrix(&HomologyClass::new(c).unwrap()).unwrap();
            prop_assert!(t.is_symplectic().unwrap());
            prop_assert_eq!(t.matrix().determinant().unwrap(), 1);
        }
    }
}
