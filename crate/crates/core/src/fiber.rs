//! Fiber geometry of aligned families: coset parametrizations, quotient
//! frames, Plücker coordinates, interpolated image equations, toric
//! certificates, and boundary probes.
//!
//! The central object is a substitution `g(x_i) = x_i + sum a_{i,v} x^v`
//! whose free parameters range over a coordinate set. Everything downstream
//! is exact linear algebra over the polynomial ring in those parameters:
//! membership "identically in the parameters" is decided symbolically, with
//! random rational specializations used only as a fast rejection path.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::flags::{coordinate_set, Flag, VariableOrder};
use crate::ideal::MonomialIdeal;
use crate::linalg;
use crate::measuring::MeasuringSequence;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::mpoly::{MPoly, MPolyRing};
use crate::ring::{Rationals, Ring};
use crate::rng::Rng;
use crate::tpoly::{Substitution, TPoly};

/// The substitution `g(x_i) = x_i + sum a_t x^{v_t}` with one free rational
/// parameter per coordinate `(i, v)`. Parameters are indexed by the sorted
/// coordinate list, so reports can name them deterministically.
#[derive(Clone, Debug)]
pub struct CosetParametrization {
    nvars: usize,
    coordinates: Vec<(usize, Monomial)>,
    ring: MPolyRing<Rationals>,
}

impl CosetParametrization {
    pub fn new(nvars: usize, mut coordinates: Vec<(usize, Monomial)>) -> Result<Self> {
        for (i, v) in &coordinates {
            if *i >= nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: *i });
            }
            if v.nvars() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: v.nvars() });
            }
            if v.is_constant() {
                return Err(Error::ConstantMonomial);
            }
        }
        coordinates.sort();
        coordinates.dedup();
        let ring = MPolyRing::new(Rationals, coordinates.len());
        Ok(CosetParametrization { nvars, coordinates, ring })
    }

    /// Parametrization attached to the coordinate set of a measuring
    /// sequence and a chosen flag.
    pub fn from_measures(
        ms: &MeasuringSequence,
        order: &VariableOrder,
        flag: &Flag,
    ) -> Result<Self> {
        let coords = coordinate_set(ms, order, flag)?;
        CosetParametrization::new(ms.nvars(), coords)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coordinates(&self) -> &[(usize, Monomial)] {
        &self.coordinates
    }

    pub fn parameter_count(&self) -> usize {
        self.coordinates.len()
    }

    /// The polynomial ring in the parameters `a_1..a_k`.
    pub fn ring(&self) -> &MPolyRing<Rationals> {
        &self.ring
    }

    /// Image of `x_i`: the variable plus one parametrized term per
    /// coordinate attached to `i`.
    pub fn image(&self, i: usize, cutoff: u32) -> TPoly<MPoly<BigRational>> {
        let var = Monomial::var(self.nvars, i);
        let mut img = TPoly::monomial(&self.ring, var, cutoff);
        for (t, (j, v)) in self.coordinates.iter().enumerate() {
            if *j == i {
                img = img.add(
                    &self.ring,
                    &TPoly::term(&self.ring, v.clone(), self.ring.parameter(t), cutoff),
                );
            }
        }
        img
    }

    /// The full substitution over the parameter ring. Its linear part has
    /// determinant with constant term 1, hence is never zero. Windows below
    /// degree 2 are widened to 2: no window that small holds a linear part.
    pub fn substitution(&self, cutoff: u32) -> Substitution<MPoly<BigRational>> {
        let cutoff = cutoff.max(2);
        let images = (0..self.nvars).map(|i| self.image(i, cutoff)).collect();
        Substitution::new(&self.ring, images, cutoff).expect("determinant has constant term 1")
    }

    /// Substitution over the rationals at a concrete parameter point.
    /// Windows below degree 2 are widened as in [`Self::substitution`].
    pub fn specialize(
        &self,
        point: &[BigRational],
        cutoff: u32,
    ) -> Result<Substitution<BigRational>> {
        if point.len() != self.coordinates.len() {
            return Err(Error::DimensionMismatch {
                expected: self.coordinates.len(),
                found: point.len(),
            });
        }
        let cutoff = cutoff.max(2);
        let images = (0..self.nvars)
            .map(|i| {
                let img = self.image(i, cutoff);
                TPoly::from_terms(
                    &Rationals,
                    self.nvars,
                    cutoff,
                    img.terms().map(|(m, c)| (m.clone(), self.ring.eval(c, point))),
                )
            })
            .collect();
        Substitution::new(&Rationals, images, cutoff)
    }
}

/// Whether a substitution over the rationals is the specialization of the
/// parametrized normal form: each image is its variable plus terms supported
/// only on that variable's coordinates. Checked below the cutoff.
pub fn coset_normal_form(
    param: &CosetParametrization,
    subst: &Substitution<BigRational>,
    cutoff: u32,
) -> bool {
    (0..param.nvars()).all(|i| {
        let var = TPoly::monomial(&Rationals, Monomial::var(param.nvars(), i), cutoff);
        let diff = subst.image(i).truncate(cutoff).sub(&Rationals, &var);
        diff.support()
            .iter()
            .all(|v| param.coordinates.binary_search(&(i, v.clone())).is_ok())
    })
}

/// A pair of monomial ideals `J2 <= J1` sandwiching every parametrized
/// image of an ideal, with the graded frame basis `J1 \ J2` in between.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientFrame {
    ideal: MonomialIdeal,
    j1: MonomialIdeal,
    j2: MonomialIdeal,
    basis: Vec<Monomial>,
    cutoff: u32,
}

/// Compute the frame of `ideal` under the parametrization, working modulo
/// degree `cutoff`.
///
/// `J1` is generated by every monomial appearing in a parametrized image of
/// an ideal member, together with the ideal itself. `J2` is the largest
/// monomial ideal whose members lie in the span of those images identically
/// in the parameters: a monomial passes exactly when the inverse
/// substitution pulls it back into the ideal, which turns span membership
/// over the parameter field into a support check.
pub fn quotient_frame(
    param: &CosetParametrization,
    ideal: &MonomialIdeal,
    cutoff: u32,
) -> Result<QuotientFrame> {
    if ideal.nvars() != param.nvars() {
        return Err(Error::DimensionMismatch { expected: param.nvars(), found: ideal.nvars() });
    }
    let nilp = ideal.nilpotency_index()?;
    if cutoff < nilp {
        return Err(Error::CutoffTooSmall { required: nilp, found: cutoff });
    }
    if cutoff > 64 {
        return Err(Error::SearchSpaceTooLarge(u64::from(cutoff)));
    }
    // substituted images need room for their degree-one part
    let cutoff = cutoff.max(2);
    let ring = param.ring();
    let g = param.substitution(cutoff);
    let ginv = g.invert_unipotent(ring, cutoff)?;

    let mut j1_gens = ideal.gens().to_vec();
    for m in ideal.members_below(cutoff) {
        let img = g.apply(ring, &TPoly::monomial(ring, m, cutoff), cutoff);
        j1_gens.extend(img.support());
    }
    let j1 = MonomialIdeal::new(param.nvars(), j1_gens)?;

    let mut j2_gens = MonomialIdeal::maximal_power(param.nvars(), cutoff).gens().to_vec();
    for m in j1.members_below(cutoff) {
        let back = ginv.apply(ring, &TPoly::monomial(ring, m.clone(), cutoff), cutoff);
        if back.supported_in(ideal) {
            j2_gens.push(m);
        }
    }
    let j2 = MonomialIdeal::new(param.nvars(), j2_gens)?;
    debug_assert!(j1.contains_ideal(&j2));

    let basis: Vec<Monomial> =
        j1.members_below(cutoff).into_iter().filter(|m| !j2.contains(m)).collect();
    Ok(QuotientFrame { ideal: ideal.clone(), j1, j2, basis, cutoff })
}

impl QuotientFrame {
    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn j1(&self) -> &MonomialIdeal {
        &self.j1
    }

    pub fn j2(&self) -> &MonomialIdeal {
        &self.j2
    }

    /// Monomials of `J1 \ J2` below the cutoff, in graded order.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// Coefficient vector of a polynomial in the frame basis; terms inside
    /// `J2` or beyond the cutoff project to zero.
    pub fn reduce<R: Ring>(&self, ring: &R, f: &TPoly<R::Elem>) -> Vec<R::Elem> {
        let mut out = vec![ring.zero(); self.basis.len()];
        for (m, c) in f.terms() {
            if m.degree() >= self.cutoff || self.j2.contains(m) {
                continue;
            }
            match self.basis.binary_search(m) {
                Ok(pos) => out[pos] = ring.add(&out[pos], c),
                Err(_) => debug_assert!(false, "term outside the frame"),
            }
        }
        out
    }
}

/// Plücker description of the parametrized subspace `g(I)` inside the frame:
/// a generically independent set of image rows and all of their maximal
/// minors, listed over the lexicographically ordered column subsets.
#[derive(Clone, Debug)]
pub struct PluckerMap {
    frame: QuotientFrame,
    ring: MPolyRing<Rationals>,
    row_sources: Vec<Monomial>,
    rows: Vec<Vec<MPoly<BigRational>>>,
    subsets: Vec<Vec<usize>>,
    coordinates: Vec<MPoly<BigRational>>,
}

pub fn plucker_map(param: &CosetParametrization, frame: &QuotientFrame) -> Result<PluckerMap> {
    let ring = *param.ring();
    let g = param.substitution(frame.cutoff());
    let mut candidates = Vec::new();
    for m in frame.ideal().members_below(frame.cutoff()) {
        let img = g.apply(&ring, &TPoly::monomial(&ring, m.clone(), frame.cutoff()), frame.cutoff());
        let row = frame.reduce(&ring, &img);
        if row.iter().any(|c| !ring.is_zero(c)) {
            candidates.push((m, row));
        }
    }
    let rows_only: Vec<Vec<MPoly<BigRational>>> =
        candidates.iter().map(|(_, r)| r.clone()).collect();
    let chosen = generically_independent_rows(&ring, &rows_only, 0x706c_7563_6b65_7221);
    let row_sources: Vec<Monomial> = chosen.iter().map(|&i| candidates[i].0.clone()).collect();
    let rows: Vec<Vec<MPoly<BigRational>>> = chosen.iter().map(|&i| candidates[i].1.clone()).collect();
    let r = rows.len();
    if r == 0 {
        return Err(Error::RankDeficient { expected: 1, found: 0 });
    }
    let subsets = combinations(frame.basis().len(), r);
    let coordinates: Vec<MPoly<BigRational>> =
        subsets.iter().map(|cols| minor(&ring, &rows, cols)).collect();
    debug_assert!(coordinates.iter().any(|c| !ring.is_zero(c)));
    Ok(PluckerMap { frame: frame.clone(), ring, row_sources, rows, subsets, coordinates })
}

impl PluckerMap {
    pub fn frame(&self) -> &QuotientFrame {
        &self.frame
    }

    pub fn ring(&self) -> &MPolyRing<Rationals> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn parameter_count(&self) -> usize {
        self.ring.nvars()
    }

    /// Ideal members whose images were kept as independent rows.
    pub fn row_sources(&self) -> &[Monomial] {
        &self.row_sources
    }

    pub fn rows(&self) -> &[Vec<MPoly<BigRational>>] {
        &self.rows
    }

    /// Column subsets indexing the coordinates, in lexicographic order.
    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn coordinates(&self) -> &[MPoly<BigRational>] {
        &self.coordinates
    }

    /// The coordinate tuple at a concrete parameter point.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<Vec<BigRational>> {
        if point.len() != self.ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.nvars(),
                found: point.len(),
            });
        }
        Ok(self.coordinates.iter().map(|c| self.ring.eval(c, point)).collect())
    }

    /// Minors recomputed after relabeling the frame basis by `perm`, still
    /// listed over lexicographic subsets of the new column positions. An odd
    /// relabeling flips signs pairwise rather than globally, so the whole
    /// tuple is recomputed instead of patched.
    pub fn reordered_coordinates(&self, perm: &[usize]) -> Result<Vec<MPoly<BigRational>>> {
        let b = self.frame.basis().len();
        let mut seen = perm.to_vec();
        seen.sort_unstable();
        if perm.len() != b || seen != (0..b).collect::<Vec<_>>() {
            return Err(Error::DimensionMismatch { expected: b, found: perm.len() });
        }
        let rows: Vec<Vec<MPoly<BigRational>>> = self
            .rows
            .iter()
            .map(|row| perm.iter().map(|&c| row[c].clone()).collect())
            .collect();
        Ok(self.subsets.iter().map(|cols| minor(&self.ring, &rows, cols)).collect())
    }

    /// Coordinate labeled by an arbitrary index sequence: zero on repeats,
    /// otherwise the sorted coordinate with the sorting permutation's sign.
    fn signed_coordinate(&self, indices: &[usize]) -> MPoly<BigRational> {
        let mut idx = indices.to_vec();
        let mut swaps = 0usize;
        for i in 0..idx.len() {
            for j in (i + 1)..idx.len() {
                match idx[j].cmp(&idx[i]) {
                    core::cmp::Ordering::Less => {
                        idx.swap(i, j);
                        swaps += 1;
                    }
                    core::cmp::Ordering::Equal => return self.ring.zero(),
                    core::cmp::Ordering::Greater => {}
                }
            }
        }
        let pos = self.subsets.binary_search(&idx).expect("subset enumeration is complete");
        let coord = self.coordinates[pos].clone();
        if swaps.is_multiple_of(2) {
            coord
        } else {
            self.ring.neg(&coord)
        }
    }

    /// Exchange identities between the maximal minors, checked identically
    /// in the parameters.
    pub fn exchange_relations_hold(&self) -> bool {
        let b = self.frame.basis().len();
        let r = self.rows.len();
        if r + 1 > b {
            return true;
        }
        let shorts = combinations(b, r - 1);
        let longs = combinations(b, r + 1);
        for s in &shorts {
            for t in &longs {
                let mut acc = self.ring.zero();
                for (tau, &extra) in t.iter().enumerate() {
                    let mut left = s.clone();
                    left.push(extra);
                    let mut right = t.clone();
                    right.remove(tau);
                    let prod =
                        self.ring.mul(&self.signed_coordinate(&left), &self.signed_coordinate(&right));
                    acc = if tau % 2 == 0 {
                        self.ring.add(&acc, &prod)
                    } else {
                        self.ring.sub(&acc, &prod)
                    };
                }
                if !self.ring.is_zero(&acc) {
                    return false;
                }
            }
        }
        true
    }
}

/// Per-degree bases of the homogeneous polynomials vanishing on the image of
/// the coordinate tuple, found by seeded sampling and then confirmed
/// symbolically. Index `d - 1` holds the degree-`d` basis.
pub fn interpolate_image_equations(
    map: &PluckerMap,
    max_degree: u32,
    samples: usize,
    seed: u64,
) -> Result<Vec<Vec<MPoly<BigRational>>>> {
    let p = map.coordinates().len();
    let k = map.parameter_count();
    let x_ring = MPolyRing::new(Rationals, p);
    let mut rng = Rng::new(seed);
    let mut out = Vec::new();
    for degree in 1..=max_degree {
        let mons = monomials_of_degree(p, degree);
        let mut count = samples.max(mons.len());
        let mut found = None;
        for _attempt in 0..4 {
            let mut matrix = Vec::with_capacity(count);
            for _ in 0..count {
                let point: Vec<BigRational> = (0..k).map(|_| rng.rational(8, 4)).collect();
                let values = map.evaluate(&point)?;
                matrix.push(
                    mons.iter().map(|m| eval_monomial(&values, m)).collect::<Vec<BigRational>>(),
                );
            }
            let null = linalg::nullspace(&Rationals, matrix);
            let candidates: Vec<MPoly<BigRational>> = null
                .iter()
                .map(|vec| {
                    let mut poly = x_ring.zero();
                    for (m, c) in mons.iter().zip(vec) {
                        if !Rationals.is_zero(c) {
                            poly = x_ring.add(&poly, &x_ring.term(m.clone(), c.clone()));
                        }
                    }
                    poly
                })
                .collect();
            let verified = candidates
                .iter()
                .all(|f| map.ring.is_zero(&eval_at_polys(&map.ring, f, map.coordinates())));
            if verified {
                found = Some(candidates);
                break;
            }
            count *= 2;
        }
        match found {
            Some(basis) => out.push(basis),
            None => return Err(Error::InsufficientSamples { samples: count }),
        }
    }
    Ok(out)
}

/// Weight data attached to the coordinates: the vectors `e_i - v`, whether
/// they are linearly independent over the rationals, and what the Plücker
/// coordinates look like under the induced grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricReport {
    pub weights: Vec<Vec<i64>>,
    pub independent: bool,
    pub all_monomial: bool,
    pub weight_homogeneous: bool,
}

pub fn toric_check(map: &PluckerMap, param: &CosetParametrization) -> ToricReport {
    let n = param.nvars();
    let weights: Vec<Vec<i64>> = param
        .coordinates()
        .iter()
        .map(|(i, v)| {
            (0..n)
                .map(|j| {
                    let e = i64::from(v.exp(j));
                    if j == *i {
                        1 - e
                    } else {
                        -e
                    }
                })
                .collect()
        })
        .collect();
    let independent = if weights.is_empty() {
        true
    } else {
        let rows: Vec<Vec<BigRational>> = weights
            .iter()
            .map(|w| w.iter().map(|&x| Rationals.from_i64(x)).collect())
            .collect();
        linalg::rank(&Rationals, rows) == weights.len()
    };
    let all_monomial = map.coordinates().iter().all(|c| c.term_count() <= 1);
    let weight_homogeneous =
        map.coordinates().iter().all(|c| map.ring.term_weights(c, &weights).len() <= 1);
    debug_assert!(!independent || all_monomial);
    ToricReport { weights, independent, all_monomial, weight_homogeneous }
}

/// Outcome of testing a candidate boundary family against a Plücker map:
/// the family's coordinate tuple, whether the interpolated equations vanish
/// on it identically, and whether a coordinate that is constant and nonzero
/// on the parametrized image vanishes identically on the family. The last
/// condition certifies that no parameter specialization reaches the family.
#[derive(Clone, Debug)]
pub struct BoundaryReport {
    pub point: Vec<MPoly<BigRational>>,
    pub equations_vanish: bool,
    pub chart_indices: Vec<usize>,
    pub separated: bool,
}

pub fn boundary_probe(
    map: &PluckerMap,
    family_ring: &MPolyRing<Rationals>,
    family: &[TPoly<MPoly<BigRational>>],
    equations: &[MPoly<BigRational>],
) -> Result<BoundaryReport> {
    let frame = map.frame();
    let reduced: Vec<Vec<MPoly<BigRational>>> = family
        .iter()
        .map(|f| frame.reduce(family_ring, f))
        .filter(|row| row.iter().any(|c| !family_ring.is_zero(c)))
        .collect();
    let chosen = generically_independent_rows(family_ring, &reduced, 0x626f_756e_6461_7279);
    let rows: Vec<Vec<MPoly<BigRational>>> = chosen.iter().map(|&i| reduced[i].clone()).collect();
    if rows.len() != map.rank() {
        return Err(Error::RankDeficient { expected: map.rank(), found: rows.len() });
    }
    let point: Vec<MPoly<BigRational>> =
        map.subsets().iter().map(|cols| minor(family_ring, &rows, cols)).collect();
    let equations_vanish = equations
        .iter()
        .all(|eq| family_ring.is_zero(&eval_at_polys(family_ring, eq, &point)));
    let chart_indices: Vec<usize> = map
        .coordinates()
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            c.single_term().is_some_and(|(m, _)| m.is_constant())
        })
        .map(|(k, _)| k)
        .collect();
    let separated = chart_indices.iter().any(|&k| family_ring.is_zero(&point[k]));
    Ok(BoundaryReport { point, equations_vanish, chart_indices, separated })
}

/// Greedy selection of rows that are independent over the fraction field of
/// the parameter ring. A fixed-seed rational specialization certifies most
/// rank growth cheaply; the fraction-free symbolic rank settles the rest.
fn generically_independent_rows(
    ring: &MPolyRing<Rationals>,
    rows: &[Vec<MPoly<BigRational>>],
    seed: u64,
) -> Vec<usize> {
    let mut rng = Rng::new(seed);
    let point: Vec<BigRational> = (0..ring.nvars()).map(|_| rng.nonzero_rational(16, 5)).collect();
    let mut chosen: Vec<usize> = Vec::new();
    let mut numeric: Vec<Vec<BigRational>> = Vec::new();
    let mut symbolic: Vec<Vec<MPoly<BigRational>>> = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let row_numeric: Vec<BigRational> = row.iter().map(|c| ring.eval(c, &point)).collect();
        let mut trial = numeric.clone();
        trial.push(row_numeric.clone());
        let grows = if linalg::rank(&Rationals, trial) == chosen.len() + 1 {
            true
        } else {
            // the specialization may hide generic independence
            let mut stack = symbolic.clone();
            stack.push(row.clone());
            linalg::rank_fraction_free(ring, stack) == chosen.len() + 1
        };
        if grows {
            chosen.push(idx);
            numeric.push(row_numeric);
            symbolic.push(row.clone());
        }
    }
    chosen
}

fn minor(
    ring: &MPolyRing<Rationals>,
    rows: &[Vec<MPoly<BigRational>>],
    cols: &[usize],
) -> MPoly<BigRational> {
    let sub: Vec<Vec<MPoly<BigRational>>> = rows
        .iter()
        .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
        .collect();
    linalg::determinant(ring, &sub)
}

/// All `k`-element subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(n, k, i + 1, current, out);
            current.pop();
        }
    }
    rec(n, k, 0, &mut current, &mut out);
    out
}

/// Evaluate `f` substituting `images[i]` for its `i`-th variable, landing in
/// the images' ring. Unlike ring composition this crosses rings: `f` may
/// live in a ring with a different variable count.
fn eval_at_polys(
    target: &MPolyRing<Rationals>,
    f: &MPoly<BigRational>,
    images: &[MPoly<BigRational>],
) -> MPoly<BigRational> {
    let mut acc = target.zero();
    for (m, c) in f.terms() {
        let mut term = target.constant(c.clone());
        for (i, &e) in m.exps().iter().enumerate() {
            for _ in 0..e {
                term = target.mul(&term, &images[i]);
            }
        }
        acc = target.add(&acc, &term);
    }
    acc
}

fn eval_monomial(values: &[BigRational], m: &Monomial) -> BigRational {
    let mut acc = Rationals.one();
    for (i, &e) in m.exps().iter().enumerate() {
        for _ in 0..e {
            acc = Rationals.mul(&acc, &values[i]);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_ideal, parse_ideal_sequence};
    use crate::tpoly::ideal_image_space;

    fn q(x: i64) -> BigRational {
        Rationals.from_i64(x)
    }

    fn mono(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    fn pair_param() -> CosetParametrization {
        let ideals = parse_ideal_sequence("[x1, x2^4]; [x1, x2^2]").unwrap();
        let ms = MeasuringSequence::compute(&ideals, 0).unwrap();
        let order = VariableOrder::from_measures(&ms).unwrap();
        let flag = order.default_flag();
        CosetParametrization::from_measures(&ms, &order, &flag).unwrap()
    }

    fn pair_map() -> (CosetParametrization, PluckerMap) {
        let param = pair_param();
        let ideal = parse_ideal("[x1, x2^4]", 0).unwrap();
        let frame = quotient_frame(&param, &ideal, 4).unwrap();
        let map = plucker_map(&param, &frame).unwrap();
        (param, map)
    }

    #[test]
    fn parametrization_images_follow_coordinates() {
        let param = pair_param();
        assert_eq!(param.coordinates(), &[(0, mono(&[0, 2])), (0, mono(&[0, 3]))]);
        let ring = *param.ring();
        let img0 = param.image(0, 5);
        assert_eq!(img0.coeff(&mono(&[1, 0])), Some(&ring.one()));
        assert_eq!(img0.coeff(&mono(&[0, 2])), Some(&ring.parameter(0)));
        assert_eq!(img0.coeff(&mono(&[0, 3])), Some(&ring.parameter(1)));
        let img1 = param.image(1, 5);
        assert_eq!(img1.support(), vec![mono(&[0, 1])]);
    }

    #[test]
    fn parametrization_rejects_bad_coordinates() {
        assert!(matches!(
            CosetParametrization::new(2, vec![(2, mono(&[0, 2]))]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            CosetParametrization::new(2, vec![(0, mono(&[0, 0]))]),
            Err(Error::ConstantMonomial)
        ));
    }

    #[test]
    fn frame_of_first_ideal_in_nested_pair() {
        let param = pair_param();
        let ideal = parse_ideal("[x1, x2^4]", 0).unwrap();
        let frame = quotient_frame(&param, &ideal, 4).unwrap();
        assert_eq!(frame.j1(), &parse_ideal("[x1, x2^2]", 0).unwrap());
        assert_eq!(frame.j2(), &parse_ideal("[x1^2, x1*x2^2, x2^4]", 0).unwrap());
        assert_eq!(
            frame.basis(),
            &[mono(&[1, 0]), mono(&[0, 2]), mono(&[1, 1]), mono(&[0, 3])]
        );
    }

    #[test]
    fn frame_cutoff_guard() {
        let param = pair_param();
        let ideal = parse_ideal("[x1, x2^4]", 0).unwrap();
        assert!(matches!(
            quotient_frame(&param, &ideal, 3),
            Err(Error::CutoffTooSmall { required: 4, found: 3 })
        ));
    }

    #[test]
    fn frame_of_the_maximal_ideal_is_a_point() {
        let ideals = parse_ideal_sequence("[x1, x2]").unwrap();
        let ms = MeasuringSequence::compute(&ideals, 0).unwrap();
        let order = VariableOrder::from_measures(&ms).unwrap();
        let param =
            CosetParametrization::from_measures(&ms, &order, &order.default_flag()).unwrap();
        // nilpotency one leaves no room for image terms; the window widens
        let frame = quotient_frame(&param, &ideals[0], 1).unwrap();
        assert_eq!(frame.cutoff(), 2);
        assert_eq!(frame.dimension(), 0);
    }

    #[test]
    fn frame_stable_under_larger_cutoff() {
        let param = pair_param();
        let ideal = parse_ideal("[x1, x2^4]", 0).unwrap();
        let at4 = quotient_frame(&param, &ideal, 4).unwrap();
        let at5 = quotient_frame(&param, &ideal, 5).unwrap();
        assert_eq!(at4.j1(), at5.j1());
        assert_eq!(at4.j2(), at5.j2());
        assert_eq!(at4.basis(), at5.basis());
    }

    #[test]
    fn frame_degenerate_without_parameters() {
        let param = CosetParametrization::new(2, vec![]).unwrap();
        let ideal = parse_ideal("[x1, x2^2]", 0).unwrap();
        let frame = quotient_frame(&param, &ideal, 4).unwrap();
        assert_eq!(frame.j1(), frame.j2());
        assert!(frame.basis().is_empty());
        assert!(matches!(
            plucker_map(&param, &frame),
            Err(Error::RankDeficient { expected: 1, found: 0 })
        ));
    }

    #[test]
    fn frame_of_second_ideal_is_degenerate() {
        // the images of the larger ideal sweep out its whole span, so the
        // frame quotient collapses
        let param = pair_param();
        let ideal = parse_ideal("[x1, x2^2]", 0).unwrap();
        let frame = quotient_frame(&param, &ideal, 4).unwrap();
        assert!(frame.basis().is_empty());
    }

    #[test]
    fn plucker_tuple_frozen() {
        let (param, map) = pair_map();
        let ring = *param.ring();
        let a = ring.parameter(0);
        let b = ring.parameter(1);
        assert_eq!(map.rank(), 2);
        assert_eq!(map.row_sources(), &[mono(&[1, 0]), mono(&[1, 1])]);
        assert_eq!(
            map.subsets(),
            &[
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let expected = [ring.zero(),
            ring.one(),
            a.clone(),
            a.clone(),
            ring.mul(&a, &a),
            ring.neg(&b)];
        assert_eq!(map.coordinates(), &expected[..]);
    }

    #[test]
    fn plucker_reordered_tuple_frozen() {
        // reversing the frame basis reproduces the reference column order;
        // the resulting tuple is the reference one scaled by -1, which is
        // the same projective point
        let (param, map) = pair_map();
        let ring = *param.ring();
        let a = ring.parameter(0);
        let b = ring.parameter(1);
        let reordered = map.reordered_coordinates(&[3, 2, 1, 0]).unwrap();
        let expected = vec![
            b,
            ring.neg(&ring.mul(&a, &a)),
            ring.neg(&a),
            ring.neg(&a),
            ring.neg(&ring.one()),
            ring.zero(),
        ];
        assert_eq!(reordered, expected);
    }

    #[test]
    fn plucker_point_at_origin_is_single_minor() {
        let (_, map) = pair_map();
        let values = map.evaluate(&[q(0), q(0)]).unwrap();
        assert_eq!(values, vec![q(0), q(1), q(0), q(0), q(0), q(0)]);
    }

    #[test]
    fn exchange_relations_hold_identically() {
        let (_, map) = pair_map();
        assert!(map.exchange_relations_hold());
    }

    #[test]
    fn second_layer_span_contains_j2_at_specializations() {
        let param = pair_param();
        let ideal = parse_ideal("[x1, x2^4]", 0).unwrap();
        let frame = quotient_frame(&param, &ideal, 4).unwrap();
        let mut rng = Rng::new(20260814);
        for _ in 0..20 {
            let point = vec![rng.rational(12, 5), rng.rational(12, 5)];
            let g = param.specialize(&point, 4).unwrap();
            let space = ideal_image_space(&Rationals, &g, &ideal, 4).unwrap();
            for m in frame.j2().members_below(4) {
                let poly = TPoly::monomial(&Rationals, m, 4);
                assert!(space.contains_poly(&Rationals, &poly));
            }
        }
    }

    fn poly_vec(f: &MPoly<BigRational>, mons: &[Monomial]) -> Vec<BigRational> {
        let lookup: alloc::collections::BTreeMap<&Monomial, &BigRational> = f.terms().collect();
        mons.iter().map(|m| lookup.get(m).map_or_else(|| q(0), |c| (*c).clone())).collect()
    }

    #[test]
    fn interpolation_recovers_image_equations() {
        let (_, map) = pair_map();
        let x_ring = MPolyRing::new(Rationals, 6);
        let bases = interpolate_image_equations(&map, 2, 12, 7).unwrap();
        assert_eq!(bases.len(), 2);

        let lin_mons = monomials_of_degree(6, 1);
        let lin_rows: Vec<Vec<BigRational>> =
            bases[0].iter().map(|f| poly_vec(f, &lin_mons)).collect();
        assert_eq!(lin_rows.len(), 2);
        // the first coordinate vanishes, and the third equals the fourth
        let first = x_ring.parameter(0);
        let balance = x_ring.sub(&x_ring.parameter(2), &x_ring.parameter(3));
        assert!(linalg::in_row_span(&Rationals, &lin_rows, &poly_vec(&first, &lin_mons)));
        assert!(linalg::in_row_span(&Rationals, &lin_rows, &poly_vec(&balance, &lin_mons)));

        let quad_mons = monomials_of_degree(6, 2);
        let quad_rows: Vec<Vec<BigRational>> =
            bases[1].iter().map(|f| poly_vec(f, &quad_mons)).collect();
        assert_eq!(quad_rows.len(), 12);
        // the product of the second and fifth coordinates equals the square
        // of the third
        let hyper = x_ring.sub(
            &x_ring.mul(&x_ring.parameter(1), &x_ring.parameter(4)),
            &x_ring.mul(&x_ring.parameter(2), &x_ring.parameter(2)),
        );
        assert!(linalg::in_row_span(&Rationals, &quad_rows, &poly_vec(&hyper, &quad_mons)));
    }

    #[test]
    fn toric_certificate_for_nested_pair() {
        let (param, map) = pair_map();
        let report = toric_check(&map, &param);
        assert_eq!(report.weights, vec![vec![1, -2], vec![1, -3]]);
        assert!(report.independent);
        assert!(report.all_monomial);
        assert!(report.weight_homogeneous);
    }

    #[test]
    fn toric_check_with_dependent_weights_still_homogeneous() {
        let ideals = [parse_ideal("[x1, x2^5]", 0).unwrap()];
        let ms = MeasuringSequence::compute(&ideals, 0).unwrap();
        let order = VariableOrder::from_measures(&ms).unwrap();
        let flag = order.default_flag();
        let param = CosetParametrization::from_measures(&ms, &order, &flag).unwrap();
        assert_eq!(param.parameter_count(), 3);
        let frame = quotient_frame(&param, &ideals[0], 5).unwrap();
        let map = plucker_map(&param, &frame).unwrap();
        let report = toric_check(&map, &param);
        assert!(!report.independent);
        assert!(report.weight_homogeneous);
    }

    fn canonical_equations(x_ring: &MPolyRing<Rationals>) -> Vec<MPoly<BigRational>> {
        vec![
            x_ring.parameter(0),
            x_ring.sub(&x_ring.parameter(2), &x_ring.parameter(3)),
            x_ring.sub(
                &x_ring.mul(&x_ring.parameter(1), &x_ring.parameter(4)),
                &x_ring.mul(&x_ring.parameter(2), &x_ring.parameter(2)),
            ),
        ]
    }

    #[test]
    fn boundary_family_stays_on_equations_off_chart() {
        let (_, map) = pair_map();
        let x_ring = MPolyRing::new(Rationals, 6);
        let eqs = canonical_equations(&x_ring);
        let fam_ring = MPolyRing::new(Rationals, 2);
        let alpha = fam_ring.parameter(0);
        let beta = fam_ring.parameter(1);
        let family = vec![
            TPoly::from_terms(
                &fam_ring,
                2,
                4,
                [(mono(&[1, 1]), alpha.clone()), (mono(&[0, 2]), beta.clone())],
            ),
            TPoly::monomial(&fam_ring, mono(&[2, 0]), 4),
            TPoly::monomial(&fam_ring, mono(&[1, 2]), 4),
            TPoly::monomial(&fam_ring, mono(&[0, 3]), 4),
        ];
        let report = boundary_probe(&map, &fam_ring, &family, &eqs).unwrap();
        let expected = vec![
            fam_ring.zero(),
            fam_ring.zero(),
            fam_ring.zero(),
            fam_ring.zero(),
            beta,
            alpha,
        ];
        assert_eq!(report.point, expected);
        assert!(report.equations_vanish);
        assert_eq!(report.chart_indices, vec![1]);
        assert!(report.separated);
    }

    #[test]
    fn boundary_family_degenerates_to_cone_point() {
        let (_, map) = pair_map();
        let x_ring = MPolyRing::new(Rationals, 6);
        let eqs = canonical_equations(&x_ring);
        // the family member at alpha = 1, beta = 0
        let const_ring = MPolyRing::new(Rationals, 0);
        let family = vec![
            TPoly::monomial(&const_ring, mono(&[2, 0]), 4),
            TPoly::monomial(&const_ring, mono(&[1, 1]), 4),
            TPoly::monomial(&const_ring, mono(&[0, 3]), 4),
        ];
        let report = boundary_probe(&map, &const_ring, &family, &eqs).unwrap();
        let values: Vec<BigRational> =
            report.point.iter().map(|c| const_ring.eval(c, &[])).collect();
        assert_eq!(values, vec![q(0), q(0), q(0), q(0), q(0), q(1)]);
        assert!(report.equations_vanish);
        assert!(report.separated);
    }

    #[test]
    fn composing_with_stabilizer_breaks_normal_form() {
        let param = pair_param();
        let half = BigRational::new(1.into(), 2.into());
        let g = param.specialize(&[half, q(-3)], 5).unwrap();
        assert!(coset_normal_form(&param, &g, 5));

        // x1 -> x1 + x2^4 fixes both model ideals and their measures
        let h = Substitution::elementary(&Rationals, 2, 5, 0, &mono(&[0, 4]), q(1)).unwrap();
        let gh = g.compose(&Rationals, &h).unwrap();
        assert!(!coset_normal_form(&param, &gh, 5));

        // x2 -> x2 + x1 likewise
        let h2 = Substitution::elementary(&Rationals, 2, 5, 1, &mono(&[1, 0]), q(1)).unwrap();
        let gh2 = g.compose(&Rationals, &h2).unwrap();
        assert!(!coset_normal_form(&param, &gh2, 5));

        let id = Substitution::identity(&Rationals, 2, 5);
        let gid = g.compose(&Rationals, &id).unwrap();
        assert!(coset_normal_form(&param, &gid, 5));
    }
}
