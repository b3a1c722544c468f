use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::ExteriorForm;
use crate::scalar::{self, Scalar};

/// Largest monomial space the symbolic expansion will enumerate.
pub const MONOMIAL_LIMIT: u128 = 2_000_000;

/// Exponent vector of a monomial `c₁^{e₁}⋯c_b^{e_b}`.
pub type Exponents = Vec<u32>;

/// The volume coefficient of `(Σ cᵢ ωᵢ)ⁿ` as a homogeneous polynomial of
/// degree `n` in the variables `c₁…c_b`.
///
/// Only nonzero coefficients are stored; `monomials_examined` records the size
/// of the monomial space that was expanded, C(b+n−1, n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopPowerPolynomial {
    variables: usize,
    degree: usize,
    monomials_examined: u128,
    terms: BTreeMap<Exponents, Scalar>,
}

pub fn monomial_count(variables: usize, degree: usize) -> u128 {
    if variables == 0 {
        return u128::from(degree == 0);
    }
    let n = (variables + degree - 1) as u128;
    let k = degree.min(variables - 1) as u128;
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

impl TopPowerPolynomial {
    /// Expands `(Σ cᵢ ωᵢ)ⁿ` over the given 2-forms, where `2n` is the number
    /// of generators. Since 2-forms commute, the coefficient of the monomial
    /// with multiplicities `mᵢ` is `n!/∏mᵢ!` times the volume coefficient of
    /// the ordered wedge product.
    pub fn expand(forms: &[ExteriorForm], dim: usize) -> Result<Self> {
        if dim % 2 == 1 {
            return Err(Error::OddDimension(dim));
        }
        let n = dim / 2;
        for f in forms {
            if f.degree() != 2 {
                return Err(Error::DegreeMismatch {
                    expected: 2,
                    found: f.degree(),
                });
            }
            if f.basis().dim() != dim {
                return Err(Error::BasisMismatch);
            }
        }
        let count = monomial_count(forms.len(), n);
        if count > MONOMIAL_LIMIT {
            return Err(Error::TooManyMonomials {
                count,
                limit: MONOMIAL_LIMIT,
            });
        }
        let mut poly = TopPowerPolynomial {
            variables: forms.len(),
            degree: n,
            monomials_examined: count,
            terms: BTreeMap::new(),
        };
        if let Some(first) = forms.first() {
            let one = ExteriorForm::one(first.basis());
            let mut exponents = vec![0u32; forms.len()];
            poly.expand_from(forms, &one, 0, n, &mut exponents);
        } else if n == 0 {
            poly.terms.insert(Vec::new(), scalar::one());
        }
        Ok(poly)
    }

    fn expand_from(
        &mut self,
        forms: &[ExteriorForm],
        prefix: &ExteriorForm,
        start: usize,
        remaining: usize,
        exponents: &mut Exponents,
    ) {
        if remaining == 0 {
            let volume = prefix.volume_coefficient();
            if !volume.is_zero() {
                let c = volume * multinomial(self.degree, exponents);
                self.terms.insert(exponents.clone(), c);
            }
            return;
        }
        if prefix.is_zero() {
            return;
        }
        for i in start..forms.len() {
            let next = prefix.wedge(&forms[i]).expect("same basis");
            exponents[i] += 1;
            self.expand_from(forms, &next, i, remaining - 1, exponents);
            exponents[i] -= 1;
        }
    }

    pub fn from_terms(variables: usize, degree: usize, terms: impl IntoIterator<Item = (Exponents, Scalar)>) -> Self {
        let mut out = TopPowerPolynomial {
            variables,
            degree,
            monomials_examined: monomial_count(variables, degree),
            terms: BTreeMap::new(),
        };
        for (e, c) in terms {
            assert_eq!(e.len(), variables);
            out.add(e, c);
        }
        out
    }

    fn add(&mut self, exponents: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponents.clone()).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn monomials_examined(&self) -> u128 {
        self.monomials_examined
    }

    pub fn is_identically_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c * factor));
        Self::from_terms(self.variables, self.degree, terms)
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.variables, "evaluation point has the wrong length");
        self.terms.iter().fold(Scalar::zero(), |acc, (e, c)| {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    term *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc + term
        })
    }

    /// Fixes variable `index` to `value`, keeping the remaining variables.
    pub fn substitute(&self, index: usize, value: &Scalar) -> Self {
        let mut out = TopPowerPolynomial {
            variables: self.variables,
            degree: self.degree,
            monomials_examined: self.monomials_examined,
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            let k = e[index];
            let factor = if k == 0 {
                Scalar::one()
            } else {
                num_traits::pow(value.clone(), k as usize)
            };
            let mut e = e.clone();
            e[index] = 0;
            out.add(e, c * factor);
        }
        out
    }

    /// Human form with the given variable names, e.g. `2 c1 c4 - 2 c2 c3`.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let (sign, magnitude) = scalar::signed_term(c, i == 0);
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&sign);
            if i > 0 {
                out.push(' ');
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    if k == 1 {
                        names[v].clone()
                    } else {
                        format!("{}^{k}", names[v])
                    }
                })
                .collect();
            if vars.is_empty() || magnitude != "1" {
                out.push_str(&magnitude);
                if !vars.is_empty() {
                    out.push(' ');
                }
            }
            out.push_str(&vars.join(" "));
        }
        out
    }
}

impl fmt::Display for TopPowerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.variables).map(|i| format!("c{i}")).collect();
        write!(f, "{}", self.display_with(&names))
    }
}

fn multinomial(n: usize, exponents: &[u32]) -> Scalar {
    let factorial = |k: usize| (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i));
    let denominator = exponents
        .iter()
        .fold(BigInt::one(), |acc, &m| acc * factorial(m as usize));
    Scalar::new(factorial(n), denominator)
}
