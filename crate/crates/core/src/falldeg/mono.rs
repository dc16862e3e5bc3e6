//! Packed monomials whose derived `Ord` realises a degree-compatible order.
//!
//! Exponents occupy one byte each. For grlex, variable 0 sits in the most
//! significant byte; for grevlex each byte holds `255 - e` and variable 0 is
//! least significant, so comparing `(deg, key)` compares the monomials.

use crate::error::{Error, Result};
use crate::poly::MonomialOrder;

pub(crate) const MAX_VARS: usize = 16;
const MAX_EXP: u32 = 255;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub(crate) struct Mono {
    deg: u32,
    key: u128,
}

impl Mono {
    pub(crate) fn degree(self) -> u32 {
        self.deg
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Codec {
    nvars: usize,
    order: MonomialOrder,
    full: u128,
}

impl Codec {
    pub(crate) fn new(nvars: usize, order: MonomialOrder) -> Result<Codec> {
        if nvars > MAX_VARS {
            return Err(Error::InvalidInput(format!(
                "span computations support at most {MAX_VARS} variables, got {nvars}"
            )));
        }
        let full = (0..nvars).fold(0u128, |acc, v| acc | (0xffu128 << (8 * v)));
        Ok(Codec { nvars, order, full })
    }

    pub(crate) fn nvars(&self) -> usize {
        self.nvars
    }

    fn shift(&self, v: usize) -> u32 {
        match self.order {
            MonomialOrder::GrLex => 8 * (self.nvars - 1 - v) as u32,
            MonomialOrder::GrevLex => 8 * v as u32,
        }
    }

    pub(crate) fn encode(&self, exps: &[u32]) -> Result<Mono> {
        let mut key = 0u128;
        let mut deg = 0;
        for (v, &e) in exps.iter().enumerate() {
            if e > MAX_EXP {
                return Err(Error::InvalidInput(format!("exponent {e} exceeds {MAX_EXP}")));
            }
            deg += e;
            let b = match self.order {
                MonomialOrder::GrLex => e,
                MonomialOrder::GrevLex => MAX_EXP - e,
            };
            key |= (b as u128) << self.shift(v);
        }
        if self.order == MonomialOrder::GrevLex {
            // variables beyond exps.len() have exponent 0
            for v in exps.len()..self.nvars {
                key |= 0xffu128 << self.shift(v);
            }
        }
        Ok(Mono { deg, key })
    }

    pub(crate) fn one(&self) -> Mono {
        self.encode(&[]).expect("empty exponent vector")
    }

    #[inline]
    pub(crate) fn exp(&self, m: Mono, v: usize) -> u32 {
        let b = ((m.key >> self.shift(v)) & 0xff) as u32;
        match self.order {
            MonomialOrder::GrLex => b,
            MonomialOrder::GrevLex => MAX_EXP - b,
        }
    }

    pub(crate) fn decode(&self, m: Mono) -> Vec<u32> {
        (0..self.nvars).map(|v| self.exp(m, v)).collect()
    }

    /// Raw exponent bytes in variable-shift layout (`e_v` at `shift(v)`).
    #[inline]
    fn exps_word(&self, m: Mono) -> u128 {
        match self.order {
            MonomialOrder::GrLex => m.key,
            MonomialOrder::GrevLex => self.full - m.key,
        }
    }

    #[inline]
    fn from_exps_word(&self, w: u128, deg: u32) -> Mono {
        let key = match self.order {
            MonomialOrder::GrLex => w,
            MonomialOrder::GrevLex => self.full - w,
        };
        Mono { deg, key }
    }

    #[inline]
    pub(crate) fn mul(&self, a: Mono, b: Mono) -> Mono {
        self.from_exps_word(self.exps_word(a) + self.exps_word(b), a.deg + b.deg)
    }

    #[inline]
    pub(crate) fn mul_var(&self, a: Mono, v: usize) -> Mono {
        self.from_exps_word(self.exps_word(a) + (1u128 << self.shift(v)), a.deg + 1)
    }

    pub(crate) fn divides(&self, a: Mono, b: Mono) -> bool {
        if a.deg > b.deg {
            return false;
        }
        (0..self.nvars).all(|v| self.exp(a, v) <= self.exp(b, v))
    }

    /// `b / a`, assuming `a | b`.
    pub(crate) fn div(&self, b: Mono, a: Mono) -> Mono {
        self.from_exps_word(self.exps_word(b) - self.exps_word(a), b.deg - a.deg)
    }

    pub(crate) fn lcm(&self, a: Mono, b: Mono) -> Mono {
        let exps: Vec<u32> = (0..self.nvars).map(|v| self.exp(a, v).max(self.exp(b, v))).collect();
        self.encode(&exps).expect("bounded exponents")
    }

    pub(crate) fn coprime(&self, a: Mono, b: Mono) -> bool {
        (0..self.nvars).all(|v| self.exp(a, v) == 0 || self.exp(b, v) == 0)
    }

    /// All monomials of total degree `d`, ascending.
    pub(crate) fn monomials_of_degree(&self, d: u32) -> Vec<Mono> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.nvars];
        fn rec(c: &Codec, v: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Mono>) {
            if v + 1 >= c.nvars {
                if c.nvars > 0 {
                    exps[v] = left;
                    out.push(c.encode(exps).expect("bounded"));
                    exps[v] = 0;
                } else if left == 0 {
                    out.push(c.one());
                }
                return;
            }
            for e in 0..=left {
                exps[v] = e;
                rec(c, v + 1, left - e, exps, out);
            }
            exps[v] = 0;
        }
        rec(self, 0, d, &mut exps, &mut out);
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;

    #[test]
    fn packed_order_matches_reference() {
        for order in [MonomialOrder::GrevLex, MonomialOrder::GrLex] {
            let c = Codec::new(3, order).unwrap();
            let mut all = Vec::new();
            for d in 0..4 {
                all.extend(c.monomials_of_degree(d));
            }
            for w in all.windows(2) {
                let a = Monomial::new(c.decode(w[0]));
                let b = Monomial::new(c.decode(w[1]));
                assert_eq!(order.cmp(&a, &b), std::cmp::Ordering::Less);
            }
            let x = c.encode(&[1, 2, 0]).unwrap();
            let y = c.encode(&[0, 1, 3]).unwrap();
            assert_eq!(c.decode(c.mul(x, y)), vec![1, 3, 3]);
            assert_eq!(c.decode(c.mul_var(x, 2)), vec![1, 2, 1]);
            assert_eq!(c.decode(c.div(c.mul(x, y), y)), vec![1, 2, 0]);
            assert_eq!(c.decode(c.lcm(x, y)), vec![1, 2, 3]);
            assert!(!c.divides(x, y));
        }
    }
}
