//! Finitely presented groups: the total-space fundamental group of a
//! fibration, Tietze simplification and abelianization.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::fibration::MonodromyFactorization;
use crate::matrix::IntegerMatrix;
use crate::snf::smith_normal_form;
use crate::words::{surface_label, FreeWord, Letter};

/// `⟨labels | relators⟩` with relators freely and cyclically reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    labels: Vec<String>,
    relators: Vec<FreeWord>,
}

impl Presentation {
    pub fn new(labels: Vec<String>, relators: Vec<FreeWord>) -> Result<Self> {
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Inconsistent(format!(
                    "duplicate generator label `{l}`"
                )));
            }
        }
        for r in &relators {
            if let Some(g) = r.max_generator() {
                if g as usize >= labels.len() {
                    return Err(Error::Inconsistent(format!(
                        "relator uses generator {g} but only {} are declared",
                        labels.len()
                    )));
                }
            }
        }
        Ok(Presentation {
            labels,
            relators: relators
                .into_iter()
                .map(|r| FreeWord::reduce(r.letters().iter().copied()).cyclic_reduce())
                .collect(),
        })
    }

    pub fn generator_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    pub fn relator_to_string(&self, r: &FreeWord) -> String {
        r.to_string_with(|g| self.labels[g as usize].clone())
    }

    /// Tietze move: drop relators that reduce to the identity.
    pub fn delete_trivial_relators(&self) -> Presentation {
        Presentation {
            labels: self.labels.clone(),
            relators: self
                .relators
                .iter()
                .filter(|r| !r.is_empty())
                .cloned()
                .collect(),
        }
    }

    /// Tietze move: drop relators equal to an earlier one up to cyclic
    /// rotation and inversion.
    pub fn delete_duplicate_relators(&self) -> Presentation {
        let mut seen = HashSet::new();
        let relators = self
            .relators
            .iter()
            .filter(|r| seen.insert(cyclic_key(r)))
            .cloned()
            .collect();
        Presentation {
            labels: self.labels.clone(),
            relators,
        }
    }

    /// Generators occurring exactly once in relator `relator`.
    pub fn eliminable_generators(&self, relator: usize) -> Vec<u32> {
        let r = &self.relators[relator];
        let mut gens: Vec<u32> = r
            .letters()
            .iter()
            .map(|l| l.generator)
            .filter(|&g| r.occurrences(g) == 1)
            .collect();
        gens.sort_unstable();
        gens
    }

    /// Tietze move: solve relator `relator` for `generator` (which must occur
    /// there exactly once), substitute into the other relators and drop both.
    pub fn eliminate(&self, relator: usize, generator: u32) -> Result<Presentation> {
        let r = &self.relators[relator];
        let pos = r
            .letters()
            .iter()
            .position(|l| l.generator == generator)
            .filter(|_| r.occurrences(generator) == 1)
            .ok_or_else(|| {
                Error::Inconsistent(format!(
                    "generator {generator} does not occur exactly once in relator {relator}"
                ))
            })?;
        // r ~ x^e w, so x = w^-1 (e = +1) or x = w (e = -1).
        let rotated = r.rotate(pos);
        let head = rotated.letters()[0];
        let rest = FreeWord::reduce(rotated.letters()[1..].iter().copied());
        let image = if head.inverse { rest } else { rest.inverse() };

        let relabel = |g: u32| if g > generator { g - 1 } else { g };
        let relators = self
            .relators
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != relator)
            .map(|(_, w)| {
                w.substitute(|g| (g == generator).then(|| image.clone()))
                    .cyclic_reduce()
                    .relabel(relabel)
            })
            .collect();
        let mut labels = self.labels.clone();
        labels.remove(generator as usize);
        Ok(Presentation { labels, relators })
    }

    fn best_elimination(&self) -> Option<(usize, u32)> {
        self.relators
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                self.eliminable_generators(i)
                    .first()
                    .map(|&g| (r.len(), g, i))
            })
            .min()
            .map(|(_, g, i)| (i, g))
    }
}

/// Lexicographically least rotation of `w` or `w^-1`.
fn cyclic_key(w: &FreeWord) -> Vec<Letter> {
    let inv = w.inverse();
    let n = w.len().max(1);
    (0..n)
        .flat_map(|k| [w.rotate(k), inv.rotate(k)])
        .map(|r| r.letters().to_vec())
        .min()
        .unwrap_or_default()
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} | ", self.labels.join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            r.write_with(f, |g| self.labels[g as usize].clone())?;
        }
        f.write_str(">")
    }
}

/// `π_1` of the total space over `S^2`: the surface group modulo every
/// vanishing cycle. Cycle words are kept verbatim, repeats included.
pub fn total_space_pi1(f: &MonodromyFactorization) -> Result<Presentation> {
    if f.base_genus() != 0 {
        return Err(Error::Unsupported(format!(
            "total-space presentation needs base S^2, got base genus {}",
            f.base_genus()
        )));
    }
    let g = f.fiber_genus();
    let labels = (0..2 * g).map(surface_label).collect();
    let mut surface = Vec::new();
    for i in 0..g {
        let (a, b) = (2 * i, 2 * i + 1);
        surface.extend([
            Letter::new(a, false),
            Letter::new(b, false),
            Letter::new(a, true),
            Letter::new(b, true),
        ]);
    }
    let mut relators = vec![FreeWord::reduce(surface)];
    relators.extend(f.cycles().iter().map(|c| c.word.as_free().clone()));
    Presentation::new(labels, relators)
}

/// Repeats the moves (trivial deletion, duplicate deletion, one generator
/// elimination) until nothing is eliminable or `max_passes` eliminations
/// have been made. Elimination prefers the shortest relator, then the lowest
/// generator index.
pub fn tietze_simplify(p: &Presentation, max_passes: usize) -> Presentation {
    let clean = |p: &Presentation| p.delete_trivial_relators().delete_duplicate_relators();
    let mut cur = clean(p);
    for _ in 0..max_passes {
        let Some((rel, gen)) = cur.best_elimination() else {
            break;
        };
        cur = match cur.eliminate(rel, gen) {
            Ok(next) => clean(&next),
            Err(_) => break,
        };
    }
    cur
}

/// One row per relator: exponent sums of each generator.
pub fn relation_matrix(p: &Presentation) -> IntegerMatrix {
    let n = p.generator_count();
    IntegerMatrix::from_rows_with_width(p.relators.iter().map(|r| r.exponent_sums(n)).collect(), n)
}

/// A finitely generated abelian group `Z^rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk` with
/// `d1 | d2 | ... | dk`, each `≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

impl AbelianInvariants {
    pub fn free(rank: usize) -> Self {
        AbelianInvariants {
            rank,
            torsion: Vec::new(),
        }
    }

    /// Rank one with torsion `(n)`: `Z ⊕ Z/n`, or `Z` when `n = 1`.
    pub fn is_z_plus_zn(&self, n: i64) -> bool {
        self.rank == 1
            && if n == 1 {
                self.torsion.is_empty()
            } else {
                self.torsion == [n]
            }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z^{}", self.rank)?;
        for d in &self.torsion {
            write!(f, " + Z/{d}")?;
        }
        Ok(())
    }
}

pub fn abelianization(p: &Presentation) -> Result<AbelianInvariants> {
    let diag = smith_normal_form(&relation_matrix(p))?;
    let nonzero = diag.iter().filter(|&&d| d != 0).count();
    Ok(AbelianInvariants {
        rank: p.generator_count() - nonzero,
        torsion: diag.into_iter().filter(|&d| d >= 2).collect(),
    })
}
