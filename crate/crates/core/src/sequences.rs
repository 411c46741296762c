//! Virtual sequences: strictly increasing integer sequences that eventually
//! agree with their indices, their weights, and their bijection with integer
//! partitions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(s_0, s_1, ...)` stored as the shortest prefix after which `s_j = j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct VirtualSequence {
    prefix: Vec<i64>,
}

impl VirtualSequence {
    /// The vacuum `(0, 1, 2, ...)`.
    pub fn vacuum() -> Self {
        VirtualSequence::default()
    }

    /// Build from any prefix; the tail `s_j = j` is implied after it.
    pub fn new(prefix: Vec<i64>) -> Result<Self> {
        if prefix.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Parse(format!("sequence {prefix:?} is not strictly increasing")));
        }
        if let Some(&last) = prefix.last() {
            if last >= prefix.len() as i64 {
                return Err(Error::Parse(format!(
                    "sequence {prefix:?} collides with the implied tail s_j = j"
                )));
            }
        }
        let mut prefix = prefix;
        while let Some(&last) = prefix.last() {
            if last == prefix.len() as i64 - 1 {
                prefix.pop();
            } else {
                break;
            }
        }
        Ok(VirtualSequence { prefix })
    }

    /// Nontrivial prefix; every later entry satisfies `s_j = j`.
    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }

    pub fn is_vacuum(&self) -> bool {
        self.prefix.is_empty()
    }

    /// `s_j` for any `j >= 0`.
    pub fn get(&self, j: usize) -> i64 {
        self.prefix.get(j).copied().unwrap_or(j as i64)
    }

    /// `sum_j (j - s_j)`, the size of the associated partition.
    pub fn weight(&self) -> i64 {
        self.prefix.iter().enumerate().map(|(j, &s)| j as i64 - s).sum()
    }

    /// `lambda_{j+1} = j - s_j`.
    pub fn to_partition(&self) -> Partition {
        let parts = self
            .prefix
            .iter()
            .enumerate()
            .map(|(j, &s)| (j as i64 - s) as u32)
            .filter(|&p| p > 0)
            .collect();
        Partition { parts }
    }

    pub fn from_partition(lambda: &Partition) -> Self {
        let prefix = lambda.parts.iter().enumerate().map(|(j, &p)| j as i64 - p as i64).collect();
        VirtualSequence::new(prefix).expect("partitions map to valid sequences")
    }

    /// Comma-separated prefix, the CLI literal form.
    pub fn literal(&self) -> String {
        self.prefix.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for VirtualSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for s in &self.prefix {
            write!(f, "{s},")?;
        }
        let n = self.prefix.len();
        write!(f, "{},{},...)", n, n + 1)
    }
}

impl FromStr for VirtualSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(VirtualSequence::vacuum());
        }
        let prefix = s
            .split(',')
            .map(|p| p.trim().parse::<i64>().map_err(|e| Error::Parse(format!("bad sequence entry {p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        VirtualSequence::new(prefix)
    }
}

impl TryFrom<Vec<i64>> for VirtualSequence {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        VirtualSequence::new(v)
    }
}

impl From<VirtualSequence> for Vec<i64> {
    fn from(s: VirtualSequence) -> Self {
        s.prefix
    }
}

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::Parse(format!("{parts:?} is not a partition")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=first).map(|c| self.parts.iter().filter(|&&p| p >= c).count() as u32).collect();
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|e| Error::Parse(format!("bad part {p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Partitions of `n` in reverse lexicographic order, `(n)` first.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every sequence of weight at most `w_max`, ordered by weight.
pub fn enumerate_by_weight(w_max: u32) -> Vec<VirtualSequence> {
    (0..=w_max).flat_map(partitions_of).map(|l| VirtualSequence::from_partition(&l)).collect()
}

fn check_range(k: i64, n: i64) -> Result<()> {
    if k <= 0 || k >= n {
        return Err(Error::InvalidRange { k, n });
    }
    Ok(())
}

/// `S_{k,n}`: sequences with `k-n <= s_i <= k-1` for `i < k` and `s_i = i`
/// beyond, in lexicographic order of their length-`k` prefixes.
pub fn enumerate_skn(k: i64, n: i64) -> Result<Vec<VirtualSequence>> {
    check_range(k, n)?;
    let values: Vec<i64> = (k - n..k).collect();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k as usize).collect();
    loop {
        let prefix = idx.iter().map(|&i| values[i]).collect();
        out.push(VirtualSequence::new(prefix).expect("increasing choice"));
        // next combination in lexicographic order
        let m = values.len();
        let kk = idx.len();
        let Some(pos) = (0..kk).rev().find(|&p| idx[p] != p + m - kk) else {
            break;
        };
        idx[pos] += 1;
        for q in pos + 1..kk {
            idx[q] = idx[q - 1] + 1;
        }
    }
    Ok(out)
}

/// The `k`-subset of `{1, ..., n}` labelling `S`, obtained by shifting the
/// first `k` entries by `n - k + 1`.
pub fn subset_label(s: &VirtualSequence, k: i64, n: i64) -> Result<Vec<usize>> {
    check_range(k, n)?;
    if s.prefix().len() > k as usize {
        return Err(Error::NotInSkn(s.to_string()));
    }
    (0..k as usize)
        .map(|i| {
            let v = s.get(i);
            if v < k - n || v > k - 1 {
                Err(Error::NotInSkn(s.to_string()))
            } else {
                Ok((v + n - k + 1) as usize)
            }
        })
        .collect()
}

/// Inverse of [`subset_label`].
pub fn from_subset_label(label: &[usize], k: i64, n: i64) -> Result<VirtualSequence> {
    check_range(k, n)?;
    if label.len() != k as usize || label.iter().any(|&l| l == 0 || l as i64 > n) {
        return Err(Error::Parse(format!("{label:?} is not a {k}-subset of 1..={n}")));
    }
    VirtualSequence::new(label.iter().map(|&l| l as i64 - (n - k + 1)).collect())
}
