use std::collections::HashSet;

use super::data::BinaryDataset;
use crate::error::{Error, Result};

/// Completes a user's vector with the majority bit (ties -> 0) of every unrevealed feature among
/// training users that agree with all revealed answers. If no user agrees, the most recently
/// revealed answer is dropped until some do. Revealed answers are copied as-is.
pub fn infer_conditional_mode(data: &BinaryDataset, revealed: &[(usize, bool)]) -> Result<Vec<bool>> {
    let mut seen = HashSet::new();
    for &(f, _) in revealed {
        if f >= data.n() {
            return Err(Error::InvalidParameter(format!("feature {f} out of range 0..{}", data.n())));
        }
        if !seen.insert(f) {
            return Err(Error::InvalidParameter(format!("feature {f} revealed twice")));
        }
    }
    let mask = predict_mask(data, revealed);
    Ok((0..data.n()).map(|i| mask >> i & 1 == 1).collect())
}

pub(crate) fn predict_mask(data: &BinaryDataset, revealed: &[(usize, bool)]) -> u64 {
    let n = data.n();
    let mut condition = revealed.len();
    let matches = loop {
        let (mask, value) = revealed[..condition]
            .iter()
            .fold((0u64, 0u64), |(m, v), &(f, b)| (m | 1 << f, v | (b as u64) << f));
        let matches: Vec<u64> = data.rows().iter().copied().filter(|r| r & mask == value).collect();
        if !matches.is_empty() || condition == 0 {
            break matches;
        }
        condition -= 1;
    };
    let mut prediction = 0u64;
    for i in 0..n {
        let ones = matches.iter().filter(|&&r| r >> i & 1 == 1).count();
        if 2 * ones > matches.len() {
            prediction |= 1 << i;
        }
    }
    for &(f, b) in revealed {
        prediction = prediction & !(1 << f) | (b as u64) << f;
    }
    prediction
}
