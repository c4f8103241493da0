//! Measuring ideals of a sequence of finite-colength monomial ideals.
//!
//! For each variable `x_i`, the measuring ideal `A_i` collects the
//! monomials `f` for which the elementary substitution `x_i -> x_i + t*f`
//! over `K[t]` maps every ideal of the sequence into itself. `A_i` always
//! contains `x_i` (multiples of `x_i` pass trivially) and every monomial of
//! degree `N`, where `N` is the largest nilpotency index in the sequence,
//! so only monomials of intermediate degree need testing. The passing set
//! is closed under multiplication by monomials, which makes `A_i` a
//! monomial ideal; `passing_set_is_ideal` rechecks that on demand.
//!
//! In characteristic zero the same ideals fall out of a colon condition:
//! `f` is measured for `x_i` exactly when `(I_j : x_i)` is contained in
//! `(I_j : f)` for every `j`. `measures_by_colon` computes that form so the
//! two routes can be compared.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::ring::{Field, PrimeField, Rationals, Ring};
use crate::rng::Rng;
use crate::tpoly::{ideal_image_space, RowSpace, Substitution, TPoly, UNBOUNDED};
use crate::upoly::UPolyRing;

/// A sequence of ideals together with its measuring ideals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasuringSequence {
    ideals: Vec<MonomialIdeal>,
    measures: Vec<MonomialIdeal>,
    characteristic: u32,
    cutoff: u32,
}

impl MeasuringSequence {
    /// Run the elementary substitution tests for every variable.
    pub fn compute(ideals: &[MonomialIdeal], characteristic: u32) -> Result<Self> {
        let nvars = validate(ideals)?;
        let cutoff = max_nilpotency(ideals)?;
        let mut measures = Vec::with_capacity(nvars);
        for i in 0..nvars {
            let mut gens = alloc::vec![Monomial::var(nvars, i)];
            gens.extend(monomials_of_degree(nvars, cutoff));
            for d in 1..cutoff {
                for f in monomials_of_degree(nvars, d) {
                    // multiples of x_i pass trivially and are already present
                    if f.exp(i) > 0 {
                        continue;
                    }
                    if elementary_preserves_all(characteristic, ideals, i, &f) {
                        gens.push(f);
                    }
                }
            }
            measures.push(MonomialIdeal::new(nvars, gens)?);
        }
        Ok(MeasuringSequence { ideals: ideals.to_vec(), measures, characteristic, cutoff })
    }

    /// Assemble from precomputed parts; callers are trusted to be
    /// consistent. Useful for fixtures and structure-level tests.
    pub fn from_parts(
        ideals: Vec<MonomialIdeal>,
        measures: Vec<MonomialIdeal>,
        characteristic: u32,
        cutoff: u32,
    ) -> Self {
        MeasuringSequence { ideals, measures, characteristic, cutoff }
    }

    /// Ambient variable count.
    pub fn nvars(&self) -> usize {
        self.measures.len()
    }

    /// The measured input sequence.
    pub fn ideals(&self) -> &[MonomialIdeal] {
        &self.ideals
    }

    /// All measuring ideals, indexed by variable.
    pub fn measures(&self) -> &[MonomialIdeal] {
        &self.measures
    }

    /// The measuring ideal of variable `i`.
    pub fn measure(&self, i: usize) -> &MonomialIdeal {
        &self.measures[i]
    }

    /// Coefficient characteristic used for the tests.
    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    /// Largest nilpotency index of the sequence; the degree at which the
    /// measuring ideals become all of the maximal-ideal power.
    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// Product of measuring ideals attached to a monomial: in
    /// characteristic zero the product of `A_k` to the `k`-th exponent; in
    /// characteristic `p` the product over base-`p` digit layers of the
    /// `p^l`-stretched products of that layer.
    pub fn factor_ideal(&self, m: &Monomial) -> MonomialIdeal {
        let nvars = self.nvars();
        let layer_product = |layer: &Monomial| {
            let mut acc = MonomialIdeal::unit(nvars);
            for k in 0..nvars {
                for _ in 0..layer.exp(k) {
                    acc = acc.product(&self.measures[k]).expect("measures share arity");
                }
            }
            acc
        };
        if self.characteristic == 0 {
            return layer_product(m);
        }
        let p = self.characteristic;
        let mut acc = MonomialIdeal::unit(nvars);
        for (l, layer) in m.base_p_layers(p).iter().enumerate() {
            acc = acc
                .product(&layer_product(layer).frobenius_power(p, l as u32))
                .expect("measures share arity");
        }
        acc
    }

    /// Check that the factor ideal of every member monomial of every ideal
    /// sits inside that ideal. Members of degree at least the cutoff hold
    /// automatically, so only the lower range is scanned. Returns the
    /// violations, if any, as `(ideal index, member)` pairs.
    pub fn containment_violations(&self) -> Vec<(usize, Monomial)> {
        let mut out = Vec::new();
        for (j, ideal) in self.ideals.iter().enumerate() {
            for m in ideal.members_below(self.cutoff) {
                if !ideal.contains_ideal(&self.factor_ideal(&m)) {
                    out.push((j, m));
                }
            }
        }
        out
    }

    /// Whether, for a substitution `g` over a field of the recorded
    /// characteristic, the image span of the `j`-th ideal modulo degree
    /// `cutoff` coincides with the span assembled purely from the image
    /// spans of the measuring ideals via `factor_ideal`'s recipe.
    pub fn induced_image_matches<F>(
        &self,
        field: &F,
        g: &Substitution<F::Elem>,
        j: usize,
        cutoff: u32,
    ) -> Result<bool>
    where
        F: Field,
    {
        if cutoff < self.cutoff {
            return Err(Error::CutoffTooSmall { required: self.cutoff, found: cutoff });
        }
        let lhs = ideal_image_space(field, g, &self.ideals[j], cutoff)?;
        let measure_spans: Vec<RowSpace<F::Elem>> = self
            .measures
            .iter()
            .map(|a| ideal_image_space(field, g, a, cutoff))
            .collect::<Result<_>>()?;
        let mut rhs: Option<RowSpace<F::Elem>> = None;
        for m in self.ideals[j].members_below(cutoff) {
            let space = self.factor_span(field, &measure_spans, &m, cutoff);
            rhs = Some(match rhs {
                None => space,
                Some(acc) => acc.sum(field, &space),
            });
        }
        let rhs = rhs.ok_or(Error::EmptySequence)?;
        Ok(lhs == rhs)
    }

    /// Span-level analogue of `factor_ideal` with the measuring ideals
    /// replaced by their image spans.
    fn factor_span<F>(
        &self,
        field: &F,
        spans: &[RowSpace<F::Elem>],
        m: &Monomial,
        cutoff: u32,
    ) -> RowSpace<F::Elem>
    where
        F: Field,
    {
        let nvars = self.nvars();
        let layer_product = |layer: &Monomial| {
            let mut acc = RowSpace::unit_space(field, nvars, cutoff);
            for k in 0..nvars {
                for _ in 0..layer.exp(k) {
                    acc = acc.product(field, &spans[k]);
                }
            }
            acc
        };
        if self.characteristic == 0 {
            return layer_product(m);
        }
        let p = self.characteristic;
        let mut acc = RowSpace::unit_space(field, nvars, cutoff);
        for (l, layer) in m.base_p_layers(p).iter().enumerate() {
            let mut twisted = layer_product(layer);
            for _ in 0..l {
                twisted = twisted.frobenius(field, p);
            }
            acc = acc.product(field, &twisted);
        }
        acc
    }

    /// Build a random substitution of the coset shape, each variable moved
    /// by a combination of members of its own measuring ideal, and check
    /// that every measuring ideal is preserved exactly. Coefficients are
    /// drawn by `sample`, retrying the rare draws with singular linear
    /// part.
    pub fn coset_preserves_measures<F>(
        &self,
        field: &F,
        rng: &mut Rng,
        trials: usize,
        mut sample: impl FnMut(&mut Rng) -> F::Elem,
    ) -> bool
    where
        F: Field,
    {
        let nvars = self.nvars();
        'trial: for _ in 0..trials {
            for _attempt in 0..8 {
                let mut images = Vec::with_capacity(nvars);
                for i in 0..nvars {
                    let pool = self.measures[i].members_below(self.cutoff + 1);
                    let mut img = TPoly::monomial(field, Monomial::var(nvars, i), UNBOUNDED);
                    let picks = 1 + rng.below(3) as usize;
                    for _ in 0..picks {
                        let m = rng.choose(&pool).clone();
                        img = img.add(field, &TPoly::term(field, m, sample(rng), UNBOUNDED));
                    }
                    images.push(img);
                }
                match Substitution::new(field, images, UNBOUNDED) {
                    Ok(s) => {
                        if !self.measures.iter().all(|a| s.preserves_ideal(field, a)) {
                            return false;
                        }
                        continue 'trial;
                    }
                    Err(Error::SingularLinearPart) => continue,
                    Err(_) => return false,
                }
            }
            // linear part refused to come out nonsingular; treat as failure
            return false;
        }
        true
    }

    /// Exhaustively confirm that the member monomials of each measuring
    /// ideal below the cutoff are exactly the monomials passing the
    /// elementary test. This is the structural fact that makes the passing
    /// set an ideal.
    pub fn passing_set_is_ideal(&self) -> bool {
        let nvars = self.nvars();
        for i in 0..nvars {
            for d in 1..self.cutoff {
                for f in monomials_of_degree(nvars, d) {
                    let member = self.measures[i].contains(&f);
                    let passes =
                        elementary_preserves_all(self.characteristic, &self.ideals, i, &f);
                    if member != passes {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Whether `x_i -> x_i + t*f` over `K[t]` maps every ideal of the sequence
/// into itself, with `K` of the given characteristic.
pub fn elementary_preserves_all(
    characteristic: u32,
    ideals: &[MonomialIdeal],
    i: usize,
    f: &Monomial,
) -> bool {
    if characteristic == 0 {
        elementary_over(&UPolyRing::new(Rationals), ideals, i, f)
    } else {
        elementary_over(&UPolyRing::new(PrimeField::new(characteristic)), ideals, i, f)
    }
}

fn elementary_over<R: Ring>(
    ring: &UPolyRing<R>,
    ideals: &[MonomialIdeal],
    i: usize,
    f: &Monomial,
) -> bool {
    let nvars = f.nvars();
    let t = ring.parameter();
    match Substitution::elementary(ring, nvars, UNBOUNDED, i, f, t) {
        Ok(s) => ideals.iter().all(|ideal| s.preserves_ideal(ring, ideal)),
        Err(_) => false,
    }
}

/// Characteristic-zero closed form: the ideal generated by the monomials
/// `f` with `(I_j : x_i)` contained in `(I_j : f)` for every `j`, together
/// with `x_i` and the full power of the maximal ideal at the cutoff.
pub fn measures_by_colon(ideals: &[MonomialIdeal]) -> Result<Vec<MonomialIdeal>> {
    let nvars = validate(ideals)?;
    let cutoff = max_nilpotency(ideals)?;
    let mut out = Vec::with_capacity(nvars);
    for i in 0..nvars {
        let xi = Monomial::var(nvars, i);
        let colons: Vec<MonomialIdeal> =
            ideals.iter().map(|id| id.colon(&xi)).collect::<Result<_>>()?;
        let mut gens = alloc::vec![xi];
        gens.extend(monomials_of_degree(nvars, cutoff));
        for d in 1..cutoff {
            for f in monomials_of_degree(nvars, d) {
                if f.exp(i) > 0 {
                    continue;
                }
                let ok = ideals
                    .iter()
                    .zip(&colons)
                    .all(|(id, cx)| id.colon(&f).expect("arity validated").contains_ideal(cx));
                if ok {
                    gens.push(f);
                }
            }
        }
        out.push(MonomialIdeal::new(nvars, gens)?);
    }
    Ok(out)
}

fn validate(ideals: &[MonomialIdeal]) -> Result<usize> {
    let first = ideals.first().ok_or(Error::EmptySequence)?;
    let nvars = first.nvars();
    for id in ideals {
        if id.nvars() != nvars {
            return Err(Error::DimensionMismatch { expected: nvars, found: id.nvars() });
        }
    }
    Ok(nvars)
}

fn max_nilpotency(ideals: &[MonomialIdeal]) -> Result<u32> {
    let mut cutoff = 0;
    for id in ideals {
        cutoff = cutoff.max(id.nilpotency_index()?);
    }
    if cutoff == 0 {
        // every ideal is the unit ideal; nothing is being measured
        return Err(Error::EmptySequence);
    }
    Ok(cutoff)
}
