//! Exact oracles for moments and tails of sign forms.
//!
//! Two independent routes compute E Z^{2M}:
//!
//! * full enumeration over all 2ⁿ sign assignments (n ≤ 24), and
//! * symbolic expansion of Z^{2M} into monomials, replacing each even
//!   power x^{2m} by the input's 2m-th moment and each odd power by zero.
//!
//! With Rademacher moments (all even moments 1), the expansion reduces
//! exponents modulo 2 since ε² = 1 and must agree with enumeration; with
//! Gaussian moments it computes E Z̄^{2M} for the comparison variable built
//! from the same coefficients. Odd orders return 0 by contract.
//!
//! Summation policy: enumeration accumulates over sign vectors in
//! increasing binary mask order, and expansion sums terms in canonical
//! signature order, so results are independent of any internal work
//! partitioning.

use std::collections::BTreeMap;

use crate::distributions::MomentSequence;
use crate::error::{Error, Result};
use crate::form::{factorial, SymmetricMultilinearForm};

/// Enumeration budget: at most 2²⁴ sign assignments.
pub const ENUMERATION_MAX_N: usize = 24;

/// Live-term cap for the symbolic expansion; the worst case is exponential
/// and must fail loudly instead of thrashing.
pub const DEFAULT_TERM_BUDGET: usize = 10_000_000;

fn check_enumeration_budget(n: usize) -> Result<()> {
    if n > ENUMERATION_MAX_N {
        return Err(Error::EnumerationBudget {
            n,
            max: ENUMERATION_MAX_N,
        });
    }
    Ok(())
}

/// Coefficient keys as bit masks; the term sign at a sign assignment is the
/// parity of the overlap, which reproduces `evaluate` bit for bit.
fn key_masks(form: &SymmetricMultilinearForm) -> Vec<(u64, f64)> {
    form.coefficients()
        .map(|(key, value)| {
            let mask = key.iter().fold(0u64, |m, &j| m | 1 << (j - 1));
            (mask, value)
        })
        .collect()
}

fn enumerate_outcomes(form: &SymmetricMultilinearForm, mut visit: impl FnMut(f64)) {
    let n = form.dimension();
    let kfact = factorial(form.degree());
    let masks = key_masks(form);
    for assignment in 0..1u64 << n {
        let mut sum = 0.0;
        for &(mask, value) in &masks {
            if (mask & assignment).count_ones() & 1 == 1 {
                sum -= value;
            } else {
                sum += value;
            }
        }
        visit(kfact * sum);
    }
}

/// E Z^order by full enumeration: 2⁻ⁿ Σ evaluate(form, s)^order.
/// Odd orders return 0.
pub fn exact_moment_rademacher(form: &SymmetricMultilinearForm, order: u32) -> Result<f64> {
    check_enumeration_budget(form.dimension())?;
    if order == 0 {
        return Ok(1.0);
    }
    if order % 2 == 1 {
        return Ok(0.0);
    }
    let mut acc = 0.0;
    enumerate_outcomes(form, |z| acc += z.powi(order as i32));
    Ok(acc / (1u64 << form.dimension()) as f64)
}

/// P(|Z| > u) by full enumeration.
pub fn exact_tail(form: &SymmetricMultilinearForm, u: f64) -> Result<f64> {
    check_enumeration_budget(form.dimension())?;
    let mut hits = 0u64;
    enumerate_outcomes(form, |z| {
        if z.abs() > u {
            hits += 1;
        }
    });
    Ok(hits as f64 / (1u64 << form.dimension()) as f64)
}

/// Sparse polynomial in the input variables. Keys are (variable, exponent)
/// pairs sorted by variable; zero coefficients are dropped on merge.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialPolynomial {
    terms: BTreeMap<Vec<(u32, u32)>, f64>,
}

impl MonomialPolynomial {
    pub fn one() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), 1.0);
        Self { terms }
    }

    /// The form as a polynomial: k!·a_S on each squarefree canonical key.
    pub fn from_form(form: &SymmetricMultilinearForm) -> Self {
        let kfact = factorial(form.degree());
        let terms = form
            .coefficients()
            .map(|(key, value)| {
                let sig: Vec<(u32, u32)> = key.iter().map(|&j| (j, 1)).collect();
                (sig, kfact * value)
            })
            .collect();
        Self { terms }
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Product with term merging. `square_is_one` reduces exponents modulo
    /// 2 (valid when the inputs square to 1, i.e. Rademacher). Fails once
    /// the live term count exceeds `term_budget`.
    pub fn multiply(
        &self,
        other: &Self,
        square_is_one: bool,
        term_budget: usize,
    ) -> Result<Self> {
        let mut terms: BTreeMap<Vec<(u32, u32)>, f64> = BTreeMap::new();
        for (sig_a, &coeff_a) in &self.terms {
            for (sig_b, &coeff_b) in &other.terms {
                let sig = merge_signatures(sig_a, sig_b, square_is_one);
                *terms.entry(sig).or_insert(0.0) += coeff_a * coeff_b;
                if terms.len() > term_budget {
                    return Err(Error::TermBudget {
                        budget: term_budget,
                    });
                }
            }
        }
        terms.retain(|_, coeff| *coeff != 0.0);
        Ok(Self { terms })
    }

    /// Replace x_j^{2m} by the 2m-th moment and any odd power by zero, then
    /// sum in canonical term order.
    pub fn expectation(&self, moments: &MomentSequence) -> Result<f64> {
        let mut acc = 0.0;
        'term: for (sig, &coeff) in &self.terms {
            let mut prod = coeff;
            for &(_, exp) in sig {
                if exp % 2 == 1 {
                    continue 'term;
                }
                let m = moments
                    .even_moment(exp)
                    .ok_or_else(|| Error::MomentsTooShort {
                        label: moments.label().to_string(),
                        required: exp,
                        available: moments.max_even_order(),
                    })?;
                prod *= m;
            }
            acc += prod;
        }
        Ok(acc)
    }
}

fn merge_signatures(
    a: &[(u32, u32)],
    b: &[(u32, u32)],
    square_is_one: bool,
) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = 0;
    let mut ib = 0;
    let push = |var: u32, exp: u32, out: &mut Vec<(u32, u32)>| {
        let exp = if square_is_one { exp % 2 } else { exp };
        if exp > 0 {
            out.push((var, exp));
        }
    };
    while ia < a.len() && ib < b.len() {
        let (va, ea) = a[ia];
        let (vb, eb) = b[ib];
        if va == vb {
            push(va, ea + eb, &mut out);
            ia += 1;
            ib += 1;
        } else if va < vb {
            push(va, ea, &mut out);
            ia += 1;
        } else {
            push(vb, eb, &mut out);
            ib += 1;
        }
    }
    for &(v, e) in &a[ia..] {
        push(v, e, &mut out);
    }
    for &(v, e) in &b[ib..] {
        push(v, e, &mut out);
    }
    out
}

/// E Z^order through the monomial expansion with the given input moments;
/// equals `exact_moment_rademacher` when the moments are Rademacher and
/// E Z̄^order (comparison variable) when they are Gaussian and the form has
/// absolute-value coefficients. Odd orders return 0.
pub fn exact_moment_by_expansion(
    form: &SymmetricMultilinearForm,
    moments: &MomentSequence,
    order: u32,
) -> Result<f64> {
    exact_moment_by_expansion_with_budget(form, moments, order, DEFAULT_TERM_BUDGET)
}

/// As [`exact_moment_by_expansion`] with an explicit live-term budget.
pub fn exact_moment_by_expansion_with_budget(
    form: &SymmetricMultilinearForm,
    moments: &MomentSequence,
    order: u32,
    term_budget: usize,
) -> Result<f64> {
    if order == 0 {
        return Ok(1.0);
    }
    if order % 2 == 1 {
        return Ok(0.0);
    }
    if form.is_zero() {
        return Ok(0.0);
    }
    let square_is_one = moments.all_even_moments_are_one();
    if !square_is_one && moments.max_even_order() < order {
        // A variable reaches exponent `order` whenever the same key is
        // chosen in every factor, so this length really is required.
        return Err(Error::MomentsTooShort {
            label: moments.label().to_string(),
            required: order,
            available: moments.max_even_order(),
        });
    }
    let base = MonomialPolynomial::from_form(form);
    let mut acc = MonomialPolynomial::one();
    for _ in 0..order {
        acc = acc.multiply(&base, square_is_one, term_budget)?;
    }
    acc.expectation(moments)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::SignVector;

    fn all_pairs_n3() -> SymmetricMultilinearForm {
        SymmetricMultilinearForm::from_canonical(
            2,
            3,
            [(vec![1, 2], 1.0), (vec![1, 3], 1.0), (vec![2, 3], 1.0)],
        )
        .unwrap()
    }

    fn single_pair() -> SymmetricMultilinearForm {
        SymmetricMultilinearForm::from_canonical(2, 2, [(vec![1, 2], 1.0)]).unwrap()
    }

    #[test]
    fn enumeration_matches_naive_evaluation_bitwise() {
        let forms = [
            all_pairs_n3(),
            SymmetricMultilinearForm::from_canonical(
                3,
                5,
                [(vec![1, 2, 4], -2.0), (vec![2, 3, 5], 3.0), (vec![1, 4, 5], 1.0)],
            )
            .unwrap(),
        ];
        for form in &forms {
            let n = form.dimension();
            let mut outcomes = Vec::new();
            enumerate_outcomes(form, |z| outcomes.push(z));
            for (mask, &z) in outcomes.iter().enumerate() {
                let naive = form
                    .evaluate(&SignVector::from_mask(n, mask as u64))
                    .unwrap();
                assert_eq!(z, naive, "mask {mask}");
            }
        }
    }

    #[test]
    fn rademacher_moments_of_degree_one_unit() {
        let form = SymmetricMultilinearForm::from_canonical(1, 1, [(vec![1], 1.0)]).unwrap();
        for order in [2u32, 4, 6, 8] {
            assert_eq!(exact_moment_rademacher(&form, order).unwrap(), 1.0);
        }
    }

    #[test]
    fn rademacher_moments_all_pairs() {
        // Z takes value 6 with probability 1/4 and -2 with probability 3/4.
        let form = all_pairs_n3();
        assert_eq!(exact_moment_rademacher(&form, 2).unwrap(), 12.0);
        assert_eq!(exact_moment_rademacher(&form, 4).unwrap(), 336.0);
        assert_eq!(exact_moment_rademacher(&form, 0).unwrap(), 1.0);
        assert_eq!(exact_moment_rademacher(&form, 3).unwrap(), 0.0);
    }

    #[test]
    fn enumeration_budget_is_enforced() {
        let form =
            SymmetricMultilinearForm::from_canonical(1, 25, [(vec![1], 1.0)]).unwrap();
        assert!(matches!(
            exact_moment_rademacher(&form, 2),
            Err(Error::EnumerationBudget { n: 25, max: 24 })
        ));
        assert!(matches!(
            exact_tail(&form, 1.0),
            Err(Error::EnumerationBudget { .. })
        ));
    }

    #[test]
    fn exact_tail_examples() {
        let form = all_pairs_n3();
        assert_eq!(exact_tail(&form, 1.0).unwrap(), 1.0);
        assert_eq!(exact_tail(&form, 2.0).unwrap(), 0.25);
        assert_eq!(exact_tail(&form, form.sup_bound()).unwrap(), 0.0);
    }

    #[test]
    fn expansion_gaussian_examples() {
        let unit = SymmetricMultilinearForm::from_canonical(1, 1, [(vec![1], 1.0)]).unwrap();
        let gauss = MomentSequence::gaussian(12);
        for m in 1..=6u32 {
            let want: f64 = (1..=m).map(|i| f64::from(2 * i - 1)).product();
            assert_eq!(exact_moment_by_expansion(&unit, &gauss, 2 * m).unwrap(), want);
        }

        // Z̄ = 2η₁η₂: E Z̄² = 4, E Z̄⁴ = 16·9 = 144.
        let pair = single_pair();
        assert_eq!(exact_moment_by_expansion(&pair, &gauss, 2).unwrap(), 4.0);
        assert_eq!(exact_moment_by_expansion(&pair, &gauss, 4).unwrap(), 144.0);
        assert_eq!(exact_moment_by_expansion(&pair, &gauss, 3).unwrap(), 0.0);
    }

    #[test]
    fn expansion_agrees_with_enumeration_on_rademacher() {
        let rad = MomentSequence::rademacher(12);
        let forms = [
            single_pair(),
            all_pairs_n3(),
            SymmetricMultilinearForm::from_canonical(
                3,
                6,
                [(vec![1, 2, 3], 2.0), (vec![1, 4, 6], -3.0), (vec![2, 5, 6], 1.0)],
            )
            .unwrap(),
            SymmetricMultilinearForm::from_canonical(
                1,
                4,
                [(vec![1], 1.0), (vec![2], -2.0), (vec![4], 3.0)],
            )
            .unwrap(),
        ];
        for form in &forms {
            for order in [2u32, 4, 6] {
                let by_enum = exact_moment_rademacher(form, order).unwrap();
                let by_expansion = exact_moment_by_expansion(form, &rad, order).unwrap();
                assert!(
                    (by_enum - by_expansion).abs() <= 1e-9 * by_enum.abs().max(1.0),
                    "order {order}: {by_enum} vs {by_expansion}"
                );
            }
        }
    }

    #[test]
    fn gaussian_dominates_rademacher_moments() {
        let gauss = MomentSequence::gaussian(12);
        let forms = [
            all_pairs_n3(),
            SymmetricMultilinearForm::from_canonical(
                2,
                5,
                [(vec![1, 3], -2.0), (vec![2, 5], 1.0), (vec![3, 4], 3.0)],
            )
            .unwrap(),
        ];
        for form in &forms {
            for m in 1..=3u32 {
                let rademacher = exact_moment_rademacher(form, 2 * m).unwrap();
                let gaussian =
                    exact_moment_by_expansion(&form.abs(), &gauss, 2 * m).unwrap();
                assert!(
                    rademacher <= gaussian + 1e-9 * gaussian.abs().max(1.0),
                    "M={m}: {rademacher} > {gaussian}"
                );
            }
        }
    }

    #[test]
    fn pointwise_larger_moments_never_decrease_expansion() {
        let form = SymmetricMultilinearForm::from_canonical(
            2,
            4,
            [(vec![1, 2], 1.0), (vec![2, 3], 2.0), (vec![3, 4], 0.5)],
        )
        .unwrap();
        let uni = MomentSequence::uniform_sqrt3(12);
        let gauss = MomentSequence::gaussian(12);
        for order in [2u32, 4, 6] {
            let small = exact_moment_by_expansion(&form, &uni, order).unwrap();
            let large = exact_moment_by_expansion(&form, &gauss, order).unwrap();
            assert!(small <= large + 1e-9 * large.max(1.0));
        }
    }

    #[test]
    fn moments_too_short_diagnostic() {
        let short = MomentSequence::gaussian(1);
        let err = exact_moment_by_expansion(&single_pair(), &short, 4).unwrap_err();
        match err {
            Error::MomentsTooShort {
                label,
                required,
                available,
            } => {
                assert_eq!(label, "gaussian");
                assert_eq!(required, 4);
                assert_eq!(available, 2);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn term_budget_fails_loudly() {
        let gauss = MomentSequence::gaussian(12);
        let err =
            exact_moment_by_expansion_with_budget(&all_pairs_n3(), &gauss, 4, 2).unwrap_err();
        assert!(matches!(err, Error::TermBudget { budget: 2 }));
    }

    #[test]
    fn odd_exponent_terms_vanish_in_expectation() {
        let mut poly = MonomialPolynomial::one();
        let form = SymmetricMultilinearForm::from_canonical(1, 2, [(vec![1], 1.0)]).unwrap();
        let base = MonomialPolynomial::from_form(&form);
        poly = poly.multiply(&base, false, 100).unwrap();
        assert_eq!(
            poly.expectation(&MomentSequence::gaussian(2)).unwrap(),
            0.0
        );
    }
}
