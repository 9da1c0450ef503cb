//! Homogeneous multilinear forms in random signs.
//!
//! A degree-k form in n variables is
//!
//! ```text
//! Z = Σ a(j₁,…,j_k) · ε_{j₁} ⋯ ε_{j_k}
//! ```
//!
//! summed over ordered tuples of k *distinct* indices in 1..=n, with a
//! coefficient array that is symmetric under permutation of its arguments.
//! Canonical storage keeps one value per strictly increasing tuple; the k!
//! ordered copies implied by symmetry are applied at evaluation time.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Symmetric coefficient array of a degree-k multilinear form.
///
/// Invariants: every stored key is a strictly increasing tuple of k distinct
/// indices in 1..=n, absent keys denote a zero coefficient, and exact zeros
/// are not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMultilinearForm {
    k: usize,
    n: usize,
    coeffs: BTreeMap<Vec<u32>, f64>,
}

/// A realized outcome of the sign variables: n entries, each +1 or -1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignVector {
    values: Vec<i8>,
}

impl SignVector {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if let Some(&bad) = values.iter().find(|v| **v != 1 && **v != -1) {
            return Err(Error::BadSign { found: bad });
        }
        Ok(Self { values })
    }

    /// Sign vector from the low n bits of `mask`: bit j set means
    /// coordinate j+1 is -1. Used by the enumeration oracle.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let values = (0..n)
            .map(|j| if mask >> j & 1 == 1 { -1 } else { 1 })
            .collect();
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn negated(&self) -> Self {
        Self {
            values: self.values.iter().map(|v| -v).collect(),
        }
    }
}

fn validate_key(key: &[u32], k: usize, n: usize, require_sorted: bool) -> Result<()> {
    if key.len() != k {
        return Err(Error::KeyArity {
            key: key.to_vec(),
            expected: k,
            found: key.len(),
        });
    }
    for &j in key {
        if j < 1 || j as usize > n {
            return Err(Error::IndexOutOfRange { index: j, n });
        }
    }
    for w in key.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateIndex { key: key.to_vec() });
        }
        if require_sorted && w[0] > w[1] {
            return Err(Error::UnsortedKey { key: key.to_vec() });
        }
    }
    if !require_sorted {
        // Unordered keys still must not repeat an index anywhere.
        let mut sorted = key.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateIndex { key: key.to_vec() });
        }
    }
    Ok(())
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

impl SymmetricMultilinearForm {
    /// Build a form from canonical (strictly increasing) keys. Unsorted or
    /// repeated indices are rejected; exact zero values are dropped.
    pub fn from_canonical(
        k: usize,
        n: usize,
        entries: impl IntoIterator<Item = (Vec<u32>, f64)>,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        if n < k {
            return Err(Error::DimensionBelowDegree { k, n });
        }
        let mut coeffs = BTreeMap::new();
        for (key, value) in entries {
            validate_key(&key, k, n, true)?;
            if coeffs.contains_key(&key) {
                return Err(Error::DuplicateEntry { key });
            }
            if value != 0.0 {
                coeffs.insert(key, value);
            }
        }
        Ok(Self { k, n, coeffs })
    }

    /// Symmetrize a raw coefficient map given on ordered distinct tuples:
    /// the canonical value on a sorted key is (1/k!) Σ_π raw(permuted key),
    /// with missing permutations contributing zero.
    pub fn symmetrize(
        k: usize,
        n: usize,
        raw: impl IntoIterator<Item = (Vec<u32>, f64)>,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        if n < k {
            return Err(Error::DimensionBelowDegree { k, n });
        }
        let mut sums: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        for (key, value) in raw {
            validate_key(&key, k, n, false)?;
            let mut sorted = key.clone();
            sorted.sort_unstable();
            *sums.entry(sorted).or_insert(0.0) += value;
        }
        let kfact = factorial(k);
        Self::from_canonical(k, n, sums.into_iter().map(|(key, s)| (key, s / kfact)))
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// Canonical (sorted-key, value) pairs in lexicographic key order.
    pub fn coefficients(&self) -> impl Iterator<Item = (&[u32], f64)> {
        self.coeffs.iter().map(|(k, v)| (k.as_slice(), *v))
    }

    pub fn coefficient(&self, sorted_key: &[u32]) -> f64 {
        self.coeffs.get(sorted_key).copied().unwrap_or(0.0)
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Same form with every coefficient replaced by its absolute value.
    pub fn abs(&self) -> Self {
        Self {
            k: self.k,
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(key, v)| (key.clone(), v.abs()))
                .collect(),
        }
    }

    /// V² = Σ a²(j₁,…,j_k) over *ordered* distinct tuples, which is k! times
    /// the sum of squares over canonical keys.
    pub fn v_squared(&self) -> f64 {
        factorial(self.k) * self.coeffs.values().map(|v| v * v).sum::<f64>()
    }

    /// Certified upper bound for |Z| over sign inputs: k! · Σ |a| over
    /// canonical keys.
    pub fn sup_bound(&self) -> f64 {
        factorial(self.k) * self.coeffs.values().map(|v| v.abs()).sum::<f64>()
    }

    /// Z at a realized sign vector: k! · Σ over canonical keys of
    /// value · Π signs.
    pub fn evaluate(&self, signs: &SignVector) -> Result<f64> {
        if signs.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: signs.len(),
            });
        }
        let reals: Vec<f64> = signs.values().iter().map(|&s| f64::from(s)).collect();
        self.evaluate_at(&reals)
    }

    /// Z with arbitrary real coordinates substituted for the signs; used by
    /// the Gaussian comparison variable and by the samplers.
    pub fn evaluate_at(&self, values: &[f64]) -> Result<f64> {
        if values.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: values.len(),
            });
        }
        let mut acc = 0.0;
        for (key, coeff) in &self.coeffs {
            let mut prod = *coeff;
            for &j in key {
                prod *= values[(j - 1) as usize];
            }
            acc += prod;
        }
        Ok(factorial(self.k) * acc)
    }

    /// Expand the canonical map back over all ordered distinct tuples.
    pub fn expand_ordered(&self) -> BTreeMap<Vec<u32>, f64> {
        let mut out = BTreeMap::new();
        for (key, &value) in &self.coeffs {
            let mut perm = key.clone();
            for_each_permutation(&mut perm, &mut |p| {
                out.insert(p.to_vec(), value);
            });
        }
        out
    }

    /// Parse the JSON form document
    /// `{"k": int, "n": int, "entries": [{"indices": [...], "value": ...}]}`.
    /// Indices are 1-based; unsorted or duplicate indices are rejected.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FormDocument =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        Self::from_canonical(
            doc.k,
            doc.n,
            doc.entries.into_iter().map(|e| (e.indices, e.value)),
        )
    }

    /// Serialize in the canonical key order of the form document.
    pub fn to_json(&self) -> String {
        let doc = FormDocument {
            k: self.k,
            n: self.n,
            entries: self
                .coeffs
                .iter()
                .map(|(key, &value)| FormEntry {
                    indices: key.clone(),
                    value,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("form document serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct FormDocument {
    k: usize,
    n: usize,
    entries: Vec<FormEntry>,
}

#[derive(Serialize, Deserialize)]
struct FormEntry {
    indices: Vec<u32>,
    value: f64,
}

/// Heap's algorithm; calls `f` on every permutation of `items`.
pub(crate) fn for_each_permutation<T: Copy>(items: &mut [T], f: &mut impl FnMut(&[T])) {
    fn heap<T: Copy>(items: &mut [T], size: usize, f: &mut impl FnMut(&[T])) {
        if size <= 1 {
            f(items);
            return;
        }
        for i in 0..size {
            heap(items, size - 1, f);
            if size.is_multiple_of(2) {
                items.swap(i, size - 1);
            } else {
                items.swap(0, size - 1);
            }
        }
    }
    let len = items.len();
    heap(items, len, f);
}
