use std::fmt;

/// Integer polynomial in one variable `t`, coefficients indexed by power.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<i64>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn monomial(c: i64, e: usize) -> Self {
        let mut v = vec![0; e + 1];
        v[e] = c;
        UniPoly::new(v)
    }

    /// `Π (t - r)`.
    pub fn from_roots(roots: &[u64]) -> Self {
        roots.iter().fold(UniPoly::monomial(1, 0), |acc, &r| {
            acc.mul(&UniPoly::new(vec![-(r as i64), 1]))
        })
    }

    /// `Π (1 + d t)`.
    pub fn from_one_plus(ds: &[u64]) -> Self {
        ds.iter().fold(UniPoly::monomial(1, 0), |acc, &d| {
            acc.mul(&UniPoly::new(vec![1, d as i64]))
        })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(v)
    }

    /// Divides by `(t - r)` if `r` is a root.
    fn deflate(&self, r: i64) -> Option<UniPoly> {
        if self.eval(r) != 0 {
            return None;
        }
        let n = self.coeffs.len();
        let mut q = vec![0; n - 1];
        let mut carry = 0;
        for i in (1..n).rev() {
            carry = self.coeffs[i] + carry * r;
            q[i - 1] = carry;
        }
        Some(UniPoly::new(q))
    }

    /// If the polynomial is monic and equals `Π (t - r_i)` for nonnegative
    /// integers `r_i`, returns the roots in ascending order.
    pub fn nonnegative_integer_roots(&self) -> Option<Vec<u64>> {
        let deg = self.degree()?;
        if self.coeffs[deg] != 1 {
            return None;
        }
        let bound = 1 + self.coeffs.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0);
        let mut roots = Vec::with_capacity(deg);
        let mut rest = self.clone();
        let mut r = 0u64;
        while rest.degree()? > 0 {
            if r > bound {
                return None;
            }
            match rest.deflate(r as i64) {
                Some(q) => {
                    roots.push(r);
                    rest = q;
                }
                None => r += 1,
            }
        }
        Some(roots)
    }

    /// Factored form `t^a(t-r)^k…` when the polynomial splits over the
    /// nonnegative integers.
    pub fn factored(&self) -> Option<String> {
        let roots = self.nonnegative_integer_roots()?;
        if roots.is_empty() {
            return Some("1".to_string());
        }
        let mut out = String::new();
        let mut i = 0;
        while i < roots.len() {
            let r = roots[i];
            let k = roots[i..].iter().take_while(|&&x| x == r).count();
            let base = if r == 0 { "t".to_string() } else { format!("(t-{r})") };
            out.push_str(&base);
            if k > 1 {
                out.push_str(&format!("^{k}"));
            }
            i += k;
        }
        Some(out)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match e {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    if e == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_and_display() {
        let p = UniPoly::new(vec![2, -3, 1]);
        assert_eq!(p.to_string(), "t^2 - 3t + 2");
        assert_eq!(p.nonnegative_integer_roots(), Some(vec![1, 2]));
        assert_eq!(p.factored().as_deref(), Some("(t-1)(t-2)"));
        assert_eq!(
            UniPoly::from_roots(&[0, 0, 3, 3]).factored().as_deref(),
            Some("t^2(t-3)^2")
        );
        assert_eq!(UniPoly::monomial(1, 3).factored().as_deref(), Some("t^3"));
    }

    #[test]
    fn non_splitting_has_no_roots() {
        // t^2 - 2
        assert_eq!(UniPoly::new(vec![-2, 0, 1]).nonnegative_integer_roots(), None);
        // t^2 + 1
        assert_eq!(UniPoly::new(vec![1, 0, 1]).nonnegative_integer_roots(), None);
        // (t-1)(t+1)
        assert_eq!(UniPoly::new(vec![-1, 0, 1]).nonnegative_integer_roots(), None);
    }
}
