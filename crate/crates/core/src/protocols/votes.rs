use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::input_err;
use crate::{Error, Result};

/// Secret veto bits of voters `V1..Vn` (`true` = veto).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VoteVector(Vec<bool>);

impl VoteVector {
    pub fn new(votes: Vec<bool>) -> Result<Self> {
        if votes.len() < 2 {
            return Err(input_err!("need at least two voters, got {}", votes.len()));
        }
        Ok(Self(votes))
    }

    /// Every vote vector of length `n`, in binary counting order with voter 1
    /// as the most significant bit.
    pub fn all(n: usize) -> Result<Vec<Self>> {
        if !(2..=16).contains(&n) {
            return Err(input_err!("cannot enumerate vote vectors for {n} voters"));
        }
        Ok((0..1u32 << n)
            .map(|m| Self((0..n).map(|i| (m >> (n - 1 - i)) & 1 == 1).collect()))
            .collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vetoes(&self) -> usize {
        self.0.iter().filter(|v| **v).count()
    }

    /// Whether voter `i` (1-based) vetoes.
    pub fn vetoed(&self, voter: usize) -> bool {
        voter >= 1 && self.0.get(voter - 1).copied().unwrap_or(false)
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    /// 1-based indices of the vetoing voters.
    pub fn vetoing_voters(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&i| self.vetoed(i)).collect()
    }

    pub fn to_bits(&self) -> String {
        self.0.iter().map(|v| if *v { '1' } else { '0' }).collect()
    }
}

impl FromStr for VoteVector {
    type Err = Error;

    /// Parses a bitstring with voter 1 leftmost, `1` meaning veto.
    fn from_str(s: &str) -> Result<Self> {
        let votes = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(input_err!("votes {s:?} must be a bitstring of 0/1")),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(votes)
    }
}

impl fmt::Display for VoteVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bits())
    }
}
