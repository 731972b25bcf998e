//! Boolean functions of ROM bits: truth tables and the XOR-of-AND normal form.
//!
//! Table entry `u` holds `f(u_1, ..., u_j)` where `u = sum u_i 2^(i-1)`.
//! A monomial is a bitmask over variables; the zero mask is the constant 1.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Largest arity for which tables are materialized.
pub const MAX_TABLE_VARS: usize = 24;

/// Largest `n * 2^j` accepted by [`count_functions`].
const MAX_COUNT_EXPONENT: u64 = 1 << 32;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TruthTable {
    num_vars: usize,
    bits: Vec<bool>,
}

fn check_arity(num_vars: usize) -> Result<()> {
    if num_vars == 0 || num_vars > MAX_TABLE_VARS {
        return Err(Error::TooLarge(format!(
            "truth tables need 1..={MAX_TABLE_VARS} variables, got {num_vars}"
        )));
    }
    Ok(())
}

impl TruthTable {
    pub fn new(num_vars: usize, bits: Vec<bool>) -> Result<Self> {
        check_arity(num_vars)?;
        if bits.len() != 1 << num_vars {
            return Err(Error::InvalidSpace(format!(
                "a table over {num_vars} variables has {} entries, got {}",
                1usize << num_vars,
                bits.len()
            )));
        }
        Ok(TruthTable { num_vars, bits })
    }

    pub fn from_fn(num_vars: usize, f: impl Fn(u64) -> bool) -> Result<Self> {
        check_arity(num_vars)?;
        Ok(TruthTable {
            num_vars,
            bits: (0..1u64 << num_vars).map(f).collect(),
        })
    }

    pub fn zero(num_vars: usize) -> Self {
        Self::from_fn(num_vars, |_| false).expect("arity in range")
    }

    /// `u_1 u_2 ... u_j`.
    pub fn and_all(num_vars: usize) -> Self {
        let all = (1u64 << num_vars) - 1;
        Self::from_fn(num_vars, |u| u == all).expect("arity in range")
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    #[inline]
    pub fn get(&self, u: u64) -> bool {
        self.bits[u as usize]
    }

    pub fn xor(&self, other: &TruthTable) -> Result<TruthTable> {
        if self.num_vars != other.num_vars {
            return Err(Error::ArityMismatch {
                left: self.num_vars,
                right: other.num_vars,
            });
        }
        Ok(TruthTable {
            num_vars: self.num_vars,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect(),
        })
    }

    /// Entries as `0`/`1` characters, entry 0 first.
    pub fn to_bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// The bit string read as a big-endian number (entry 0 is the most
    /// significant bit), in hex with a `0x` prefix. Needs at least 2 variables.
    pub fn to_hex(&self) -> Option<String> {
        if self.num_vars < 2 {
            return None;
        }
        let mut s = String::from("0x");
        for chunk in self.bits.chunks(4) {
            let nibble = chunk.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32);
            s.push(char::from_digit(nibble, 16).unwrap());
        }
        Some(s)
    }

    /// Parses a `0`/`1` string (entry 0 first) or a `0x`-prefixed hex string
    /// in the format of [`TruthTable::to_hex`]. The length fixes the arity.
    pub fn parse(s: &str) -> Result<TruthTable> {
        let trimmed = s.trim();
        let offset = s.len() - s.trim_start().len();
        let bits = if let Some(hex) = trimmed
            .strip_prefix("0x")
            .or_else(|| trimmed.strip_prefix("0X"))
        {
            let mut bits = Vec::with_capacity(hex.len() * 4);
            for (pos, ch) in hex.char_indices() {
                let nibble = ch
                    .to_digit(16)
                    .ok_or_else(|| Error::parse(offset + 2 + pos, format!("bad hex digit {ch:?}")))?;
                bits.extend((0..4).rev().map(|k| (nibble >> k) & 1 == 1));
            }
            bits
        } else {
            trimmed
                .char_indices()
                .map(|(pos, ch)| match ch {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(Error::parse(offset + pos, format!("expected 0 or 1, found {ch:?}"))),
                })
                .collect::<Result<Vec<bool>>>()?
        };
        let len = bits.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::parse(
                offset,
                format!("table length must be a power of two >= 2, got {len} entries"),
            ));
        }
        TruthTable::new(len.trailing_zeros() as usize, bits)
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// Algebraic normal form: a set of monomials combined with XOR.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Anf {
    num_vars: usize,
    monomials: BTreeSet<u64>,
}

impl Anf {
    pub fn new(num_vars: usize, monomials: impl IntoIterator<Item = u64>) -> Result<Self> {
        if num_vars == 0 || num_vars > 63 {
            return Err(Error::InvalidSpace(format!(
                "ANF needs 1..=63 variables, got {num_vars}"
            )));
        }
        let mut set = BTreeSet::new();
        for m in monomials {
            if m >> num_vars != 0 {
                return Err(Error::InvalidSpace(format!(
                    "monomial mask {m:#b} uses a variable beyond u{num_vars}"
                )));
            }
            // x ⊕ x = 0
            if !set.insert(m) {
                set.remove(&m);
            }
        }
        Ok(Anf {
            num_vars,
            monomials: set,
        })
    }

    pub fn zero(num_vars: usize) -> Self {
        Anf::new(num_vars, []).expect("arity in range")
    }

    /// Builds from 1-based variable lists; an empty list is the constant 1.
    pub fn from_index_lists(num_vars: usize, terms: &[&[usize]]) -> Result<Self> {
        let masks = terms
            .iter()
            .map(|term| {
                term.iter().try_fold(0u64, |acc, &i| {
                    if i == 0 || i > num_vars {
                        Err(Error::InvalidSpace(format!(
                            "variable u{i} is outside u1..u{num_vars}"
                        )))
                    } else {
                        Ok(acc | 1 << (i - 1))
                    }
                })
            })
            .collect::<Result<Vec<u64>>>()?;
        Anf::new(num_vars, masks)
    }

    /// The single monomial `u_1 ... u_j`.
    pub fn and_all(num_vars: usize) -> Self {
        Anf::new(num_vars, [(1u64 << num_vars) - 1]).expect("arity in range")
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn monomials(&self) -> impl Iterator<Item = u64> + '_ {
        self.monomials.iter().copied()
    }

    pub fn contains(&self, mask: u64) -> bool {
        self.monomials.contains(&mask)
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.monomials.iter().map(|m| m.count_ones()).max().unwrap_or(0)
    }

    /// `f(u)`, evaluated term by term.
    pub fn eval(&self, u: u64) -> bool {
        self.monomials.iter().filter(|&&m| m & !u == 0).count() % 2 == 1
    }

    /// Comma-separated monomials, each a dot-separated list of variable
    /// indices (`1,1.2` is `u1 ⊕ u1u2`); `0` stands for the constant 1 and the
    /// empty string for the zero function.
    pub fn to_list_string(&self) -> String {
        self.monomials
            .iter()
            .map(|&m| {
                if m == 0 {
                    "0".to_string()
                } else {
                    mask_variables(m)
                        .iter()
                        .map(|i| i.to_string())
                        .collect::<Vec<_>>()
                        .join(".")
                }
            })
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses the format of [`Anf::to_list_string`]. Without an explicit
    /// arity, the largest variable index used (at least 1) is taken.
    pub fn parse_list(s: &str, num_vars: Option<usize>) -> Result<Anf> {
        let mut masks = Vec::new();
        let mut highest = 0usize;
        if !s.trim().is_empty() {
            let mut pos = 0;
            for term in s.split(',') {
                let term_start = pos;
                pos += term.len() + 1;
                let lead = term.len() - term.trim_start().len();
                let body = term.trim();
                if body.is_empty() {
                    return Err(Error::parse(term_start, "empty monomial"));
                }
                if body == "0" {
                    masks.push(0);
                    continue;
                }
                let mut mask = 0u64;
                let mut var_pos = term_start + lead;
                for var in body.split('.') {
                    let index: usize = var
                        .trim()
                        .parse()
                        .map_err(|_| Error::parse(var_pos, format!("bad variable index {var:?}")))?;
                    if index == 0 || index > 63 {
                        return Err(Error::parse(var_pos, format!("variable index {index} out of range")));
                    }
                    if let Some(j) = num_vars {
                        if index > j {
                            return Err(Error::parse(
                                var_pos,
                                format!("variable u{index} exceeds arity {j}"),
                            ));
                        }
                    }
                    highest = highest.max(index);
                    mask |= 1 << (index - 1);
                    var_pos += var.len() + 1;
                }
                masks.push(mask);
            }
        }
        Anf::new(num_vars.unwrap_or(highest.max(1)), masks)
    }
}

/// 1-based variable indices present in a monomial mask.
pub fn mask_variables(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

impl fmt::Display for Anf {
    /// `u1 ⊕ u1u2`; `0` for the zero function, `1` for the empty monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return f.write_str("0");
        }
        for (k, &m) in self.monomials.iter().enumerate() {
            if k > 0 {
                f.write_str(" ⊕ ")?;
            }
            if m == 0 {
                f.write_str("1")?;
            }
            for i in mask_variables(m) {
                write!(f, "u{i}")?;
            }
        }
        Ok(())
    }
}

/// Möbius transform over GF(2): table to unique monomial set.
pub fn anf_of(t: &TruthTable) -> Anf {
    let mut coeffs = t.bits.clone();
    let n = coeffs.len();
    let mut step = 1;
    while step < n {
        for block in (0..n).step_by(2 * step) {
            for k in block..block + step {
                coeffs[k + step] ^= coeffs[k];
            }
        }
        step *= 2;
    }
    let monomials = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c)
        .map(|(m, _)| m as u64);
    Anf::new(t.num_vars, monomials).expect("masks fit the arity")
}

/// Evaluates every monomial as a conjunction and XORs them together.
pub fn truth_table_of(a: &Anf) -> Result<TruthTable> {
    TruthTable::from_fn(a.num_vars, |u| a.eval(u))
}

/// `2^(n 2^j)`, the number of functions from `j` bits to `n` bits.
pub fn count_functions(j: u32, n: u32) -> Result<BigUint> {
    let exponent = 1u64
        .checked_shl(j)
        .filter(|_| j < 64)
        .and_then(|p| p.checked_mul(n as u64))
        .filter(|&e| e <= MAX_COUNT_EXPONENT)
        .ok_or_else(|| Error::TooLarge(format!("2^({n}*2^{j}) has too many digits to materialize")))?;
    if j == 0 || n == 0 {
        return Err(Error::InvalidSpace("j and n must be positive".into()));
    }
    Ok(BigUint::from(1u32) << exponent)
}

/// The `n` output bits of a ROM computation as functions of the ROM bits.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorFunction {
    num_vars: usize,
    components: Vec<TruthTable>,
}

impl VectorFunction {
    pub fn new(components: Vec<TruthTable>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::InvalidSpace("a vector function needs at least one component".into()));
        };
        let num_vars = first.num_vars;
        if let Some(bad) = components.iter().find(|c| c.num_vars != num_vars) {
            return Err(Error::ArityMismatch {
                left: num_vars,
                right: bad.num_vars,
            });
        }
        Ok(VectorFunction {
            num_vars,
            components,
        })
    }

    pub fn zero(num_vars: usize, num_components: usize) -> Self {
        VectorFunction {
            num_vars,
            components: vec![TruthTable::zero(num_vars); num_components],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn components(&self) -> &[TruthTable] {
        &self.components
    }

    pub fn component(&self, k: usize) -> &TruthTable {
        &self.components[k]
    }

    /// Output state index for assignment `u`; component 1 is the low bit.
    pub fn state(&self, u: u64) -> usize {
        self.components
            .iter()
            .enumerate()
            .fold(0, |acc, (k, c)| acc | (c.get(u) as usize) << k)
    }
}
