//! Variable preorder, flags, coordinates, and dimension bookkeeping.
//!
//! A measuring sequence orders the variables: `x_i <= x_j` when `x_i` lies
//! in the measuring ideal of `x_j`. Mutually comparable variables form
//! equivalence classes, and the classes carry a partial order whose linear
//! extensions are the admissible flags. A flag selects, for each variable,
//! which strictly-smaller degree-one monomials count as free coordinates;
//! the higher-degree free coordinates do not depend on the flag.
//!
//! The headline identity, checked by `DimensionReport::consistent`, is that
//! the colengths of the measuring ideals sum to the variable count plus the
//! flag dimension plus the number of free coordinates.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::measuring::MeasuringSequence;
use crate::monomial::Monomial;

/// Preorder on the variables induced by measuring ideal membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableOrder {
    nvars: usize,
    leq: Vec<Vec<bool>>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl VariableOrder {
    /// Read the relation off a measuring sequence.
    pub fn from_measures(ms: &MeasuringSequence) -> Result<Self> {
        let n = ms.nvars();
        let leq: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                let xi = Monomial::var(n, i);
                (0..n).map(|j| ms.measure(j).contains(&xi)).collect()
            })
            .collect();
        Self::from_relation(leq)
    }

    /// Build from an explicit relation matrix; checks transitivity, which
    /// any relation produced by `from_measures` on honest data satisfies.
    pub fn from_relation(leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = leq.len();
        for i in 0..n {
            for j in 0..n {
                if !leq[i][j] {
                    continue;
                }
                for k in 0..n {
                    if leq[j][k] && !leq[i][k] {
                        return Err(Error::NonTransitiveRelation { i, j, k });
                    }
                }
            }
        }
        let mut class_of = alloc::vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let members: Vec<usize> =
                (i..n).filter(|&j| leq[i][j] && leq[j][i]).collect();
            for &j in &members {
                class_of[j] = classes.len();
            }
            classes.push(members);
        }
        Ok(VariableOrder { nvars: n, leq, classes, class_of })
    }

    /// Ambient variable count.
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Whether `x_i <= x_j`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Whether the two variables are mutually comparable.
    pub fn equivalent(&self, i: usize, j: usize) -> bool {
        self.leq[i][j] && self.leq[j][i]
    }

    /// Equivalence classes in order of least member.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Class index of a variable.
    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Partial order on class indices.
    pub fn class_leq(&self, a: usize, b: usize) -> bool {
        self.leq[self.classes[a][0]][self.classes[b][0]]
    }

    /// All linear extensions of the class order, lexicographically sorted
    /// on class indices.
    pub fn completions(&self) -> Vec<Vec<usize>> {
        let m = self.classes.len();
        let mut out = Vec::new();
        let mut used = alloc::vec![false; m];
        let mut acc = Vec::with_capacity(m);
        self.extend_completions(&mut used, &mut acc, &mut out);
        out
    }

    fn extend_completions(
        &self,
        used: &mut Vec<bool>,
        acc: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let m = self.classes.len();
        if acc.len() == m {
            out.push(acc.clone());
            return;
        }
        for a in 0..m {
            if used[a] {
                continue;
            }
            // a is placeable when every strictly smaller class is placed
            let ready = (0..m).all(|b| {
                b == a || !self.class_leq(b, a) || self.class_leq(a, b) || used[b]
            });
            if !ready {
                continue;
            }
            used[a] = true;
            acc.push(a);
            self.extend_completions(used, acc, out);
            acc.pop();
            used[a] = false;
        }
    }

    /// The lexicographically least completion.
    pub fn default_completion(&self) -> Vec<usize> {
        self.completions().into_iter().next().expect("at least one linear extension")
    }

    /// Resolve a completion into a flag, validating it.
    pub fn flag(&self, order: &[usize]) -> Result<Flag> {
        let m = self.classes.len();
        if order.len() != m {
            return Err(Error::IncompatibleFlag(alloc::format!(
                "expected {m} classes, got {}",
                order.len()
            )));
        }
        let mut seen = alloc::vec![false; m];
        for &a in order {
            if a >= m || seen[a] {
                return Err(Error::IncompatibleFlag(String::from(
                    "not a permutation of the classes",
                )));
            }
            seen[a] = true;
        }
        for (pos, &a) in order.iter().enumerate() {
            for &b in &order[pos + 1..] {
                if self.class_leq(b, a) && !self.class_leq(a, b) {
                    return Err(Error::IncompatibleFlag(alloc::format!(
                        "class {b} must come before class {a}"
                    )));
                }
            }
        }
        let steps = order.iter().map(|&a| self.classes[a].clone()).collect();
        Ok(Flag { order: order.to_vec(), steps })
    }

    /// Flag of the lexicographically least completion.
    pub fn default_flag(&self) -> Flag {
        self.flag(&self.default_completion()).expect("default completion is admissible")
    }
}

/// A linear refinement of the class order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    order: Vec<usize>,
    steps: Vec<Vec<usize>>,
}

impl Flag {
    /// Class indices in flag order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Variables grouped by step.
    pub fn steps(&self) -> &[Vec<usize>] {
        &self.steps
    }

    /// Position of a class in the flag.
    pub fn position(&self, class: usize) -> usize {
        self.order.iter().position(|&a| a == class).expect("class present")
    }

    /// Dimension of the partial flag variety with these block sizes,
    /// folded up two blocks at a time.
    pub fn dimension(&self) -> usize {
        let sizes: Vec<usize> = self.steps.iter().map(Vec::len).collect();
        fold_flag_dimension(&sizes)
    }
}

fn fold_flag_dimension(sizes: &[usize]) -> usize {
    match sizes {
        [] | [_] => 0,
        [c1, c2, rest @ ..] => {
            let mut merged = alloc::vec![c1 + c2];
            merged.extend_from_slice(rest);
            c1 * c2 + fold_flag_dimension(&merged)
        }
    }
}

/// The free coordinates attached to a flag: pairs `(i, v)` of a variable
/// and a monomial outside its measuring ideal, where degree-one monomials
/// only count when their class sits strictly earlier in the flag.
pub fn coordinate_set(
    ms: &MeasuringSequence,
    order: &VariableOrder,
    flag: &Flag,
) -> Result<Vec<(usize, Monomial)>> {
    let mut coords = Vec::new();
    for i in 0..ms.nvars() {
        let bound = ms.measure(i).nilpotency_index()?;
        for v in ms.measure(i).complement_below(bound) {
            if v.degree() == 1 {
                let j = (0..ms.nvars()).find(|&j| v.exp(j) == 1).expect("degree one");
                let before = flag.position(order.class_of(j)) < flag.position(order.class_of(i));
                if !before {
                    continue;
                }
            }
            coords.push((i, v));
        }
    }
    coords.sort();
    Ok(coords)
}

/// Group coordinates into symmetry classes: two coordinates match when
/// their variables are equivalent and their monomials have the same total
/// degree inside every variable class.
pub fn coordinate_classes(
    coords: &[(usize, Monomial)],
    order: &VariableOrder,
) -> Vec<Vec<usize>> {
    let profile = |k: usize| -> (usize, Vec<u32>) {
        let (i, ref v) = coords[k];
        let per_class = order
            .classes()
            .iter()
            .map(|class| class.iter().map(|&j| v.exp(j)).sum())
            .collect();
        (order.class_of(i), per_class)
    };
    let mut groups: Vec<(usize, Vec<u32>, Vec<usize>)> = Vec::new();
    for k in 0..coords.len() {
        let (c, prof) = profile(k);
        match groups.iter_mut().find(|(gc, gp, _)| *gc == c && *gp == prof) {
            Some((_, _, members)) => members.push(k),
            None => groups.push((c, prof, alloc::vec![k])),
        }
    }
    groups.into_iter().map(|(_, _, members)| members).collect()
}

/// Dimension bookkeeping for one flag choice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    /// Ambient variable count.
    pub base: usize,
    /// Dimension of the flag variety.
    pub flag: usize,
    /// Number of free coordinates.
    pub coordinates: usize,
    /// Sum of the measuring ideal colengths, computed independently.
    pub colength_sum: u64,
}

impl DimensionReport {
    /// Total dimension from the additive parts.
    pub fn total(&self) -> u64 {
        self.base as u64 + self.flag as u64 + self.coordinates as u64
    }

    /// Whether the two routes to the total agree.
    pub fn consistent(&self) -> bool {
        self.total() == self.colength_sum
    }
}

/// Compute both sides of the dimension identity.
pub fn dimension_report(
    ms: &MeasuringSequence,
    order: &VariableOrder,
    flag: &Flag,
) -> Result<DimensionReport> {
    let coords = coordinate_set(ms, order, flag)?;
    let mut colength_sum = 0u64;
    for a in ms.measures() {
        colength_sum += a.colength()?;
    }
    Ok(DimensionReport {
        base: ms.nvars(),
        flag: flag.dimension(),
        coordinates: coords.len(),
        colength_sum,
    })
}

/// Number of ideal-sequence symmetries modulo those fixing every measuring
/// ideal in place: the degree of the relabeling cover.
pub fn etale_degree(ms: &MeasuringSequence) -> Result<u64> {
    let n = ms.nvars();
    if n > 8 {
        return Err(Error::AmbientTooLarge(n));
    }
    let mut stabilizer = 0u64;
    let mut fixing = 0u64;
    for perm in permutations(n) {
        let keeps_ideals = ms
            .ideals()
            .iter()
            .all(|i| i.permute(&perm).map(|p| p == *i).unwrap_or(false));
        if !keeps_ideals {
            continue;
        }
        stabilizer += 1;
        let keeps_measures = (0..n).all(|i| {
            ms.measure(i).permute(&perm).map(|p| p == *ms.measure(i)).unwrap_or(false)
        });
        if keeps_measures {
            fixing += 1;
        }
    }
    // the measure-fixing permutations form a subgroup of the stabilizer
    debug_assert!(fixing > 0 && stabilizer.is_multiple_of(fixing));
    Ok(stabilizer / fixing)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut acc: Vec<usize> = Vec::with_capacity(n);
    let mut used = alloc::vec![false; n];
    fn rec(n: usize, used: &mut Vec<bool>, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == n {
            out.push(acc.clone());
            return;
        }
        for i in 0..n {
            if used[i] {
                continue;
            }
            used[i] = true;
            acc.push(i);
            rec(n, used, acc, out);
            acc.pop();
            used[i] = false;
        }
    }
    rec(n, &mut used, &mut acc, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::MonomialIdeal;
    use crate::parse::parse_ideal_sequence;

    fn measured(text: &str, characteristic: u32) -> MeasuringSequence {
        MeasuringSequence::compute(&parse_ideal_sequence(text).unwrap(), characteristic).unwrap()
    }

    fn brute_force_extensions(order: &VariableOrder) -> Vec<Vec<usize>> {
        let m = order.classes().len();
        permutations(m)
            .into_iter()
            .filter(|perm| {
                perm.iter().enumerate().all(|(pos, &a)| {
                    perm[pos + 1..]
                        .iter()
                        .all(|&b| !(order.class_leq(b, a) && !order.class_leq(a, b)))
                })
            })
            .collect()
    }

    #[test]
    fn incomparable_squares() {
        let ms = measured("[x1^2, x2^2]", 0);
        let order = VariableOrder::from_measures(&ms).unwrap();
        assert_eq!(order.classes(), &[alloc::vec![0], alloc::vec![1]]);
        assert!(!order.leq(0, 1) && !order.leq(1, 0));
        assert_eq!(order.completions(), alloc::vec![alloc::vec![0, 1], alloc::vec![1, 0]]);
        let flag = order.default_flag();
        assert_eq!(flag.dimension(), 1);
        let coords = coordinate_set(&ms, &order, &flag).unwrap();
        assert_eq!(coords, alloc::vec![(1, Monomial::new(alloc::vec![1, 0]))]);
        let report = dimension_report(&ms, &order, &flag).unwrap();
        assert_eq!(report.colength_sum, 4);
        assert!(report.consistent());
    }

    #[test]
    fn strict_chain_from_curvilinear() {
        let ms = measured("[x1, x2^2]", 0);
        let order = VariableOrder::from_measures(&ms).unwrap();
        assert!(order.leq(0, 1) && !order.leq(1, 0));
        assert_eq!(order.completions().len(), 1);
        let flag = order.default_flag();
        assert_eq!(flag.dimension(), 1);
        let coords = coordinate_set(&ms, &order, &flag).unwrap();
        assert!(coords.is_empty());
        let report = dimension_report(&ms, &order, &flag).unwrap();
        assert_eq!(report.colength_sum, 3);
        assert!(report.consistent());
    }

    #[test]
    fn merged_class_for_maximal_square() {
        let ms = measured("[x1^2, x1*x2, x2^2]", 0);
        let order = VariableOrder::from_measures(&ms).unwrap();
        assert_eq!(order.classes(), &[alloc::vec![0, 1]]);
        let flag = order.default_flag();
        assert_eq!(flag.dimension(), 0);
        let report = dimension_report(&ms, &order, &flag).unwrap();
        assert_eq!(report.colength_sum, 2);
        assert!(report.consistent());
    }

    #[test]
    fn nested_pair_higher_coordinates() {
        let ms = measured("[x1, x2^4]; [x1, x2^2]", 0);
        let order = VariableOrder::from_measures(&ms).unwrap();
        let flag = order.default_flag();
        let coords = coordinate_set(&ms, &order, &flag).unwrap();
        // y^2 and y^3 move x1 freely; the degree-one directions are fixed
        assert_eq!(
            coords,
            alloc::vec![
                (0, Monomial::new(alloc::vec![0, 2])),
                (0, Monomial::new(alloc::vec![0, 3])),
            ]
        );
        let report = dimension_report(&ms, &order, &flag).unwrap();
        assert_eq!(report.colength_sum, 5);
        assert!(report.consistent());
    }

    #[test]
    fn three_variables_both_characteristics() {
        let ms0 = measured("[x1, x2^2, x3^2]", 0);
        let order0 = VariableOrder::from_measures(&ms0).unwrap();
        assert_eq!(order0.completions().len(), 2);
        let flag0 = order0.default_flag();
        assert_eq!(flag0.dimension(), 3);
        let coords0 = coordinate_set(&ms0, &order0, &flag0).unwrap();
        assert_eq!(
            coords0,
            alloc::vec![
                (0, Monomial::new(alloc::vec![0, 1, 1])),
                (2, Monomial::new(alloc::vec![0, 1, 0])),
            ]
        );
        let report0 = dimension_report(&ms0, &order0, &flag0).unwrap();
        assert_eq!(report0.colength_sum, 8);
        assert!(report0.consistent());

        let ms2 = measured("[x1, x2^2, x3^2]", 2);
        let order2 = VariableOrder::from_measures(&ms2).unwrap();
        assert_eq!(order2.classes(), &[alloc::vec![0], alloc::vec![1, 2]]);
        let flag2 = order2.default_flag();
        assert_eq!(flag2.dimension(), 2);
        let coords2 = coordinate_set(&ms2, &order2, &flag2).unwrap();
        assert_eq!(coords2, alloc::vec![(0, Monomial::new(alloc::vec![0, 1, 1]))]);
        let report2 = dimension_report(&ms2, &order2, &flag2).unwrap();
        assert_eq!(report2.colength_sum, 6);
        assert!(report2.consistent());
    }

    #[test]
    fn mixed_powers_report() {
        let ms = measured("[x1^3, x2^2]", 0);
        let order = VariableOrder::from_measures(&ms).unwrap();
        let flag = order.default_flag();
        let coords = coordinate_set(&ms, &order, &flag).unwrap();
        assert_eq!(
            coords,
            alloc::vec![
                (1, Monomial::new(alloc::vec![1, 0])),
                (1, Monomial::new(alloc::vec![2, 0])),
            ]
        );
        let report = dimension_report(&ms, &order, &flag).unwrap();
        assert_eq!(report.colength_sum, 5);
        assert!(report.consistent());
    }

    #[test]
    fn completions_match_brute_force() {
        for (text, characteristic) in [
            ("[x1^2, x2^2]", 0u32),
            ("[x1, x2^2, x3^2]", 0),
            ("[x1, x2^2, x3^2]", 2),
            ("[x1^2, x2^2, x3^2]", 0),
            ("[x1, x2, x3^2]", 0),
        ] {
            let ms = measured(text, characteristic);
            let order = VariableOrder::from_measures(&ms).unwrap();
            let mut brute = brute_force_extensions(&order);
            brute.sort();
            assert_eq!(order.completions(), brute, "{text}");
        }
    }

    #[test]
    fn flag_dimension_matches_pair_count() {
        for sizes in [
            alloc::vec![1usize, 1],
            alloc::vec![2, 1, 3],
            alloc::vec![4],
            alloc::vec![1, 2, 1, 2],
        ] {
            let direct: usize = (0..sizes.len())
                .flat_map(|a| (a + 1..sizes.len()).map(move |b| (a, b)))
                .map(|(a, b)| sizes[a] * sizes[b])
                .sum();
            assert_eq!(fold_flag_dimension(&sizes), direct, "{sizes:?}");
        }
    }

    #[test]
    fn incompatible_flags_rejected() {
        let ms = measured("[x1, x2^2]", 0);
        let order = VariableOrder::from_measures(&ms).unwrap();
        assert!(matches!(order.flag(&[1, 0]), Err(Error::IncompatibleFlag(_))));
        assert!(matches!(order.flag(&[0]), Err(Error::IncompatibleFlag(_))));
        assert!(matches!(order.flag(&[0, 0]), Err(Error::IncompatibleFlag(_))));
        assert!(order.flag(&[0, 1]).is_ok());
    }

    #[test]
    fn transitivity_violations_detected() {
        // x1 <= x2 and x2 <= x3 but not x1 <= x3
        let measures = alloc::vec![
            MonomialIdeal::new(3, alloc::vec![Monomial::new(alloc::vec![1, 0, 0])]).unwrap(),
            MonomialIdeal::new(
                3,
                alloc::vec![
                    Monomial::new(alloc::vec![1, 0, 0]),
                    Monomial::new(alloc::vec![0, 1, 0]),
                ],
            )
            .unwrap(),
            MonomialIdeal::new(
                3,
                alloc::vec![
                    Monomial::new(alloc::vec![0, 1, 0]),
                    Monomial::new(alloc::vec![0, 0, 1]),
                ],
            )
            .unwrap(),
        ];
        let ms = MeasuringSequence::from_parts(Vec::new(), measures, 0, 2);
        assert_eq!(
            VariableOrder::from_measures(&ms),
            Err(Error::NonTransitiveRelation { i: 0, j: 1, k: 2 })
        );
    }

    #[test]
    fn relabeling_degrees() {
        assert_eq!(etale_degree(&measured("[x1^2, x2^2]", 0)).unwrap(), 2);
        assert_eq!(etale_degree(&measured("[x1, x2^2]", 0)).unwrap(), 1);
        assert_eq!(etale_degree(&measured("[x1^2, x1*x2, x2^2]", 0)).unwrap(), 1);
        assert_eq!(etale_degree(&measured("[x1^2, x2^2, x3^2]", 0)).unwrap(), 6);
    }

    #[test]
    fn coordinate_class_grouping() {
        let ms = measured("[x1^2, x2^2, x3^2]", 0);
        let order = VariableOrder::from_measures(&ms).unwrap();
        let flag = order.default_flag();
        let coords = coordinate_set(&ms, &order, &flag).unwrap();
        let classes = coordinate_classes(&coords, &order);
        // all variables equivalent? they are not: each is its own class
        assert_eq!(order.classes().len(), 3);
        // every coordinate is a degree-one monomial from an earlier class
        assert!(coords.iter().all(|(_, v)| v.degree() >= 1));
        assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), coords.len());
    }
}
