//! Grid-wide cross-checks between the counting routes and the closed forms.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::descent::DescentSet;
use crate::error::{Error, Result};
use crate::formulas::{
    binom_poly, d_infinity, d_infinity_count, forward_differences, last_value_formula,
    stabilization_point, Recurrence,
};
use crate::oracle::{
    count_b_sequences, count_last_fixed, count_prefix, count_prefix_budgeted, count_x, count_y,
    naive_histogram, EnumerationBudget,
};
use crate::polybasis::{sign_survey, verify_b_window, verify_c_prefix};
use crate::report::Report;
use crate::schur::{count_via_jacobi_trudi, ribbon_shape};
use crate::Count;

/// A route to `d^m(I, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Method {
    Naive,
    Prefix,
    Recurrence,
    JacobiTrudi,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Naive,
        Method::Prefix,
        Method::Recurrence,
        Method::JacobiTrudi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Naive => "naive",
            Method::Prefix => "prefix",
            Method::Recurrence => "recurrence",
            Method::JacobiTrudi => "jacobi-trudi",
        }
    }

    /// `d^m(I, n)` by this route. The prefix and Jacobi-Trudi routes take
    /// the empty set as the constant 1.
    pub fn count(
        self,
        set: &DescentSet,
        n: usize,
        m: usize,
        budget: &EnumerationBudget,
    ) -> Result<Count> {
        match self {
            Method::Naive => crate::oracle::count_naive(set, n, m, budget),
            Method::Prefix if set.is_empty() => Ok(Count::from(1u8)),
            Method::Prefix => count_prefix_budgeted(set, n, m, budget),
            Method::Recurrence => Recurrence::new().descent_count(set, n, m),
            Method::JacobiTrudi if set.is_empty() => Ok(Count::from(1u8)),
            Method::JacobiTrudi => count_via_jacobi_trudi(set, n, m),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown method {s:?}")))
    }
}

/// Which sets and sizes the suite sweeps.
#[derive(Debug, Clone)]
pub struct Suite {
    pub sets: Vec<DescentSet>,
    pub max_n: usize,
    pub max_m: usize,
    pub budget: EnumerationBudget,
}

impl Suite {
    /// Every non-empty subset of `{1..max_element}`, with `n <= 4` and `m <= 3`
    /// for the permutation-count comparisons.
    pub fn grid(max_element: usize, budget: EnumerationBudget) -> Self {
        Self {
            sets: DescentSet::all_nonempty_within(max_element).collect(),
            max_n: 4,
            max_m: 3,
            budget,
        }
    }

    pub fn single(set: DescentSet, budget: EnumerationBudget) -> Self {
        Self {
            sets: vec![set],
            max_n: 4,
            max_m: 3,
            budget,
        }
    }

    pub fn run(&self) -> Result<Vec<Report>> {
        Ok(vec![
            self.route_agreement()?,
            self.stabilization()?,
            self.closed_form()?,
            self.last_value_sums()?,
            self.coefficients()?,
            self.surjective_word_relations()?,
            self.single_descent()?,
            self.polynomiality()?,
            self.ribbons()?,
        ])
    }

    /// The four routes agree wherever each applies.
    pub fn route_agreement(&self) -> Result<Report> {
        let mut report = Report::new("four counting routes agree");
        let mut rec = Recurrence::new();
        for n in 1..=self.max_n {
            for m in 1..=self.max_m {
                let hist = match naive_histogram(n, m, &self.budget) {
                    Ok(h) => Some(h),
                    Err(Error::Budget { .. }) => None,
                    Err(e) => return Err(e),
                };
                for s in &self.sets {
                    let case = format!("I={s} n={n} m={m}");
                    let recurrence = rec.descent_count(s, n, m)?;
                    if let Some(h) = &hist {
                        let naive = h.get(s).cloned().unwrap_or_default();
                        report.check_eq("naive-equals-recurrence", case.clone(), naive, recurrence.clone());
                    }
                    if !s.is_empty() {
                        report.check_eq("prefix-equals-recurrence", case.clone(), count_prefix(s, n, m)?, recurrence.clone());
                        if s.max_element().is_some_and(|top| n * m > top) {
                            report.check_eq("jacobi-trudi-equals-recurrence", case, count_via_jacobi_trudi(s, n, m)?, recurrence);
                        }
                    }
                }
            }
        }
        Ok(report)
    }

    /// Strict rise into the stabilization point, constant from there on.
    pub fn stabilization(&self) -> Result<Report> {
        let mut report = Report::new("stabilization point a_t - t + 1");
        for s in self.nonempty() {
            let top = s.max_element().expect("non-empty");
            let big_m = stabilization_point(s)?;
            let run = s.longest_run()?;
            for n in (run + 1).max(top)..=top + 2 {
                let at = count_prefix(s, n, big_m)?;
                if big_m >= 2 {
                    let before = count_prefix(s, n, big_m - 1)?;
                    report.check("strict-rise-at-stabilization-point", format!("I={s} n={n} M={big_m}"), format!("> {before}"), &at, at > before);
                }
                for m in big_m + 1..=big_m + 2 {
                    report.check_eq("constant-from-stabilization-point", format!("I={s} n={n} m={m}"), at.clone(), count_prefix(s, n, m)?);
                }
            }
        }
        Ok(report)
    }

    /// The composition sum equals the stabilized permutation count.
    pub fn closed_form(&self) -> Result<Report> {
        let mut report = Report::new("closed form for the stabilized count");
        for s in self.nonempty() {
            let top = s.max_element().expect("non-empty");
            let big_m = stabilization_point(s)?;
            for n in top..=top + 3 {
                let closed = d_infinity_count(s, n)?;
                let case = format!("I={s} n={n}");
                report.check_eq("closed-form-equals-prefix-count", case.clone(), count_prefix(s, n, big_m)?, closed.clone());
                let sum: Count = (2..=n).map(|j| last_value_formula(s, n, j)).sum::<Result<Count>>()?;
                report.check_eq("closed-form-equals-last-value-sum", case, sum, closed);
            }
        }
        Ok(report)
    }

    /// The last-value composition sum counts words ending in `j`.
    pub fn last_value_sums(&self) -> Result<Report> {
        let mut report = Report::new("last-value formula");
        for s in self.nonempty() {
            let top = s.max_element().expect("non-empty");
            for n in top..=top + 3 {
                for j in 1..=n {
                    report.check_eq("last-value-formula-counts-words", format!("I={s} n={n} j={j}"), count_last_fixed(s, n, j)?, last_value_formula(s, n, j)?);
                }
            }
        }
        Ok(report)
    }

    /// Sign and support patterns of the binomial-basis coefficients.
    pub fn coefficients(&self) -> Result<Report> {
        let mut report = Report::new("binomial-basis coefficients");
        for s in self.nonempty() {
            report.extend(verify_b_window(s)?);
            report.extend(verify_c_prefix(s)?);
            report.extend(sign_survey(s, -3, 2)?);
        }
        Ok(report)
    }

    /// `b = x + y` and `x_{i+1}(I) = y_i(I) + b_i(I^-)`.
    pub fn surjective_word_relations(&self) -> Result<Report> {
        let mut report = Report::new("surjective word relations");
        for s in self.nonempty() {
            let top = s.max_element().expect("non-empty");
            let head = s.without_max();
            for i in 0..=top {
                let case = format!("I={s} i={i}");
                let b = count_b_sequences(s, i)?;
                let x = count_x(s, i)?;
                let y = count_y(s, i)?;
                report.check_eq("b-equals-x-plus-y", case.clone(), b, x + y.clone());
                if !head.is_empty() {
                    report.check_eq("x-shift", case, count_x(s, i + 1)?, y + count_b_sequences(&head, i)?);
                }
            }
        }
        Ok(report)
    }

    /// `d^inf({a}, n) = C(n+a-1, a) - 1`.
    pub fn single_descent(&self) -> Result<Report> {
        let mut report = Report::new("single-descent closed form");
        let max_a = self.nonempty().filter_map(DescentSet::max_element).max().unwrap_or(0);
        for a in 1..=max_a {
            let s = DescentSet::new(vec![a])?;
            for n in 1..=10i64 {
                let n = BigInt::from(n);
                let expect = binom_poly(&(n.clone() + BigInt::from(a) - 1), a) - 1;
                report.check_eq("single-descent-binomial", format!("a={a} n={n}"), expect, d_infinity(&s, &n)?);
            }
        }
        Ok(report)
    }

    /// `n -> d^m(I, n)` has degree at most `a_t` past `a_t`.
    pub fn polynomiality(&self) -> Result<Report> {
        let mut report = Report::new("polynomial in n");
        let mut rec = Recurrence::new();
        for s in self.nonempty() {
            let top = s.max_element().expect("non-empty");
            for m in 1..=self.max_m {
                let values = (top..=2 * top + 2)
                    .map(|n| rec.descent_count(s, n, m).map(BigInt::from))
                    .collect::<Result<Vec<_>>>()?;
                let diffs = forward_differences(&values, top + 1);
                let pass = diffs.iter().all(Zero::is_zero);
                let shown: Vec<String> = diffs.iter().map(ToString::to_string).collect();
                report.check("difference-of-order-max-plus-one-vanishes", format!("I={s} m={m}"), "all 0", shown.join(","), pass);
            }
        }
        Ok(report)
    }

    /// Shapes are ribbons with the expected size.
    pub fn ribbons(&self) -> Result<Report> {
        let mut report = Report::new("ribbon shapes");
        for s in self.nonempty() {
            let top = s.max_element().expect("non-empty");
            for n in 1..=self.max_n {
                for m in 1..=self.max_m {
                    if n * m <= top {
                        continue;
                    }
                    let r = ribbon_shape(s, n, m)?;
                    let case = format!("I={s} n={n} m={m}");
                    report.check("ribbon-has-no-2x2-block", case.clone(), true, r.is_ribbon(), r.is_ribbon());
                    report.check_eq("ribbon-cell-count", case.clone(), n * m, r.cell_count());
                    report.check_eq("ribbon-row-count", case, s.len() + 1, r.rows);
                }
            }
        }
        Ok(report)
    }

    fn nonempty(&self) -> impl Iterator<Item = &DescentSet> {
        self.sets.iter().filter(|s| !s.is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn methods_parse() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("fast".parse::<Method>().is_err());
    }

    #[test]
    fn empty_set_is_one_everywhere() {
        let b = EnumerationBudget::default();
        for m in Method::ALL {
            assert_eq!(m.count(&DescentSet::empty(), 3, 2, &b).unwrap(), Count::from(1u8));
        }
    }

    #[test]
    fn small_grid_passes() {
        let suite = Suite::grid(3, EnumerationBudget::default());
        for r in suite.run().unwrap() {
            assert!(r.passed(), "{r}");
            assert!(!r.checks.is_empty(), "{}", r.title);
        }
    }
}
