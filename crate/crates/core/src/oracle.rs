//! Brute-force ground truth, deliberately independent of the truncated
//! series machinery: a characteristic-zero tangent dimension for the
//! substitution orbit, and exhaustive finite-field enumeration of variable
//! images. Both exist to cross-check the measuring pipeline.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::linalg;
use crate::monomial::{monomials_below, Monomial};
use crate::ring::{Rationals, Ring};

/// Working cutoff that makes the tangent computation saturate: largest
/// nilpotency index plus largest generator degree over the sequence.
pub fn default_tangent_cutoff(ideals: &[MonomialIdeal]) -> Result<u32> {
    if ideals.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut nilp = 0;
    let mut gen_deg = 0;
    for ideal in ideals {
        nilp = nilp.max(ideal.nilpotency_index()?);
        gen_deg = gen_deg.max(ideal.max_generator_degree().unwrap_or(0));
    }
    Ok(nilp + gen_deg)
}

/// Codimension of the stabilizer inside the space of derivation tuples
/// `(f_1..f_n)`, each `f_i` a polynomial of degree below the cutoff with
/// constants allowed. A tuple stabilizes when `sum f_i * dg/dx_i` lies in
/// the ideal for every generator `g` of every ideal. The result must be
/// stable under incrementing the cutoff; one increment is retried before
/// giving up.
pub fn tangent_orbit_dimension(ideals: &[MonomialIdeal], cutoff: u32) -> Result<u64> {
    if ideals.is_empty() {
        return Err(Error::EmptySequence);
    }
    let nvars = ideals[0].nvars();
    for ideal in ideals {
        if ideal.nvars() != nvars {
            return Err(Error::DimensionMismatch { expected: nvars, found: ideal.nvars() });
        }
    }
    let d0 = dimension_at(ideals, nvars, cutoff)?;
    let d1 = dimension_at(ideals, nvars, cutoff + 1)?;
    if d0 == d1 {
        return Ok(d0);
    }
    let d2 = dimension_at(ideals, nvars, cutoff + 2)?;
    if d1 == d2 {
        return Ok(d1);
    }
    Err(Error::CutoffTooSmall { required: cutoff + 2, found: cutoff })
}

fn dimension_at(ideals: &[MonomialIdeal], nvars: usize, cutoff: u32) -> Result<u64> {
    let mons = monomials_below(nvars, cutoff);
    let ncols = nvars * mons.len();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for ideal in ideals {
        // finite colength is required; the standard monomials then index
        // every condition exactly, with no truncation error
        let standard: BTreeSet<Monomial> = ideal.standard_monomials()?.into_iter().collect();
        for g in ideal.gens() {
            let mut conditions: BTreeMap<Monomial, Vec<BigRational>> = BTreeMap::new();
            for i in 0..nvars {
                let e = g.exp(i);
                if e == 0 {
                    continue;
                }
                let partial = g.div(&Monomial::var(nvars, i)).expect("positive exponent");
                for (pos, m) in mons.iter().enumerate() {
                    let target = m.mul(&partial);
                    if standard.contains(&target) {
                        let row = conditions
                            .entry(target)
                            .or_insert_with(|| vec![Rationals.zero(); ncols]);
                        let col = i * mons.len() + pos;
                        row[col] = Rationals.add(&row[col], &Rationals.from_i64(i64::from(e)));
                    }
                }
            }
            rows.extend(conditions.into_values());
        }
    }
    Ok(linalg::rank(&Rationals, rows) as u64)
}

/// Number of candidate images examined by `enumerate_images`: nonzero
/// leading coefficient times a free choice per remaining monomial.
/// Cutoffs below 2 admit no image and count zero.
pub fn enumeration_budget(p: u32, cutoff: u32) -> u64 {
    if cutoff < 2 {
        return 0;
    }
    let count = monomials_below(2, cutoff).len() as u32 - 1;
    let free = count - 1;
    u64::from(p - 1) * u64::from(p).pow(free)
}

const ENUMERATION_CAP: u64 = 1_000_000;

/// Exhaustively enumerate images of `x_i` under substitutions over the
/// prime field that fix the other variable and carry every ideal into
/// itself, reading images modulo degree `cutoff`. Returns the monomial
/// ideal generated by every monomial supported in a surviving image, plus
/// the power of the maximal ideal at the cutoff.
///
/// Only the desk-scale range is supported: two variables, `p` in {2, 3},
/// cutoff at most 4, and at least the largest nilpotency index so that
/// truncated preservation agrees with exact preservation.
pub fn enumerate_images(
    i: usize,
    ideals: &[MonomialIdeal],
    p: u32,
    cutoff: u32,
) -> Result<MonomialIdeal> {
    if ideals.is_empty() {
        return Err(Error::EmptySequence);
    }
    let nvars = ideals[0].nvars();
    if nvars != 2 {
        return Err(Error::AmbientTooLarge(nvars));
    }
    if i >= nvars {
        return Err(Error::DimensionMismatch { expected: nvars, found: i });
    }
    for ideal in ideals {
        if ideal.nvars() != nvars {
            return Err(Error::DimensionMismatch { expected: nvars, found: ideal.nvars() });
        }
        let nilp = ideal.nilpotency_index()?;
        if cutoff < nilp {
            return Err(Error::CutoffTooSmall { required: nilp, found: cutoff });
        }
    }
    // images need room for their degree-one part
    if cutoff < 2 {
        return Err(Error::CutoffTooSmall { required: 2, found: cutoff });
    }
    let budget = enumeration_budget(p, cutoff);
    if !(p == 2 || p == 3) || cutoff > 4 || budget > ENUMERATION_CAP {
        return Err(Error::SearchSpaceTooLarge(budget));
    }

    let mons: Vec<Monomial> =
        monomials_below(2, cutoff).into_iter().filter(|m| !m.is_constant()).collect();
    let lead = mons
        .iter()
        .position(|m| *m == Monomial::var(2, i))
        .expect("degree one monomials present");
    let pe = u64::from(p);
    let mut support: BTreeSet<Monomial> = BTreeSet::new();

    // odometer over coefficient vectors; the leading slot is offset so it
    // never vanishes, which splits the walk by leading coefficient
    let mut coeffs = vec![0u64; mons.len()];
    coeffs[lead] = 1;
    loop {
        let image = GridPoly::from_terms(pe, &mons, &coeffs);
        if preserves_all(i, ideals, &image) {
            for (pos, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    support.insert(mons[pos].clone());
                }
            }
        }
        // advance
        let mut pos = 0;
        loop {
            if pos == coeffs.len() {
                let mut gens: Vec<Monomial> = support.into_iter().collect();
                gens.extend(MonomialIdeal::maximal_power(2, cutoff).gens().iter().cloned());
                return MonomialIdeal::new(2, gens);
            }
            if coeffs[pos] + 1 < pe {
                coeffs[pos] += 1;
                break;
            }
            coeffs[pos] = u64::from(pos == lead);
            pos += 1;
        }
    }
}

fn preserves_all(i: usize, ideals: &[MonomialIdeal], image: &GridPoly) -> bool {
    ideals.iter().all(|ideal| {
        ideal.gens().iter().all(|g| {
            let ei = g.exp(i);
            let ej = g.exp(1 - i);
            let mut poly = image.pow(ei);
            poly.shift(1 - i, ej);
            poly.supported_in(ideal)
        })
    })
}

/// Dense bivariate polynomial over the prime field, indexed by exponent
/// pairs. Kept separate from the generic series types on purpose.
struct GridPoly {
    p: u64,
    coeffs: Vec<Vec<u64>>,
}

impl GridPoly {
    fn from_terms(p: u64, mons: &[Monomial], cs: &[u64]) -> GridPoly {
        let dx = mons.iter().map(|m| m.exp(0)).max().unwrap_or(0) as usize;
        let dy = mons.iter().map(|m| m.exp(1)).max().unwrap_or(0) as usize;
        let mut coeffs = vec![vec![0u64; dy + 1]; dx + 1];
        for (m, &c) in mons.iter().zip(cs) {
            coeffs[m.exp(0) as usize][m.exp(1) as usize] = c % p;
        }
        GridPoly { p, coeffs }
    }

    fn one(p: u64) -> GridPoly {
        GridPoly { p, coeffs: vec![vec![1]] }
    }

    fn mul(&self, other: &GridPoly) -> GridPoly {
        let dx = self.coeffs.len() + other.coeffs.len() - 1;
        let dy = self.coeffs[0].len() + other.coeffs[0].len() - 1;
        let mut out = vec![vec![0u64; dy]; dx];
        for (a, row_a) in self.coeffs.iter().enumerate() {
            for (b, &ca) in row_a.iter().enumerate() {
                if ca == 0 {
                    continue;
                }
                for (c, row_b) in other.coeffs.iter().enumerate() {
                    for (d, &cb) in row_b.iter().enumerate() {
                        if cb != 0 {
                            out[a + c][b + d] = (out[a + c][b + d] + ca * cb) % self.p;
                        }
                    }
                }
            }
        }
        GridPoly { p: self.p, coeffs: out }
    }

    fn pow(&self, k: u32) -> GridPoly {
        let mut acc = GridPoly::one(self.p);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by a power of one variable.
    fn shift(&mut self, var: usize, by: u32) {
        if by == 0 {
            return;
        }
        if var == 0 {
            let dy = self.coeffs[0].len();
            let mut out = vec![vec![0u64; dy]; by as usize];
            out.append(&mut self.coeffs);
            self.coeffs = out;
        } else {
            for row in &mut self.coeffs {
                let mut shifted = vec![0u64; by as usize];
                shifted.append(row);
                *row = shifted;
            }
        }
    }

    fn supported_in(&self, ideal: &MonomialIdeal) -> bool {
        self.coeffs.iter().enumerate().all(|(a, row)| {
            row.iter().enumerate().all(|(b, &c)| {
                c == 0 || ideal.contains(&Monomial::new(vec![a as u32, b as u32]))
            })
        })
    }
}
