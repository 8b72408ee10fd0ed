//! Ranking ingestion and top-`m` binarisation.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Widest preference vector a [`BinaryDataset`] row can hold.
pub const MAX_ITEMS: usize = 64;

/// Whitespace-separated rankings, one user per line, items listed from most to least preferred.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankingFormat {
    /// Lines skipped at the top of the stream.
    pub header_lines: usize,
    /// Leading columns skipped on every line.
    pub metadata_columns: usize,
}

impl RankingFormat {
    pub const PLAIN: RankingFormat = RankingFormat { header_lines: 0, metadata_columns: 0 };

    /// Layout of the published sushi `*.order` files: a `<items> <sets>` header line, then
    /// `0 <items>` before each ranking.
    pub const SUSHI_ORDER: RankingFormat = RankingFormat { header_lines: 1, metadata_columns: 2 };
}

impl FromStr for RankingFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Self::PLAIN),
            "sushi" => Ok(Self::SUSHI_ORDER),
            other => Err(Error::InvalidParameter(format!("unknown ranking format preset `{other}` (expected plain or sushi)"))),
        }
    }
}

/// Complete rankings of `n` items.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankingDataset {
    n: usize,
    users: Vec<Vec<usize>>,
}

impl RankingDataset {
    pub fn new(n: usize, users: Vec<Vec<usize>>) -> Result<Self> {
        for (i, r) in users.iter().enumerate() {
            check_permutation(r, n).map_err(|message| Error::Parse { line: i + 1, message })?;
        }
        Ok(Self { n, users })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn users(&self) -> &[Vec<usize>] {
        &self.users
    }

    pub fn len(&self) -> usize {
        self.users.len()
    }

    pub fn is_empty(&self) -> bool {
        self.users.is_empty()
    }
}

fn check_permutation(ranking: &[usize], n: usize) -> std::result::Result<(), String> {
    if ranking.len() != n {
        return Err(format!("expected {n} items, found {}", ranking.len()));
    }
    let mut seen = vec![false; n];
    for &item in ranking {
        if item >= n {
            return Err(format!("item index {item} out of range 0..{n}"));
        }
        if std::mem::replace(&mut seen[item], true) {
            return Err(format!("duplicate item index {item}"));
        }
    }
    Ok(())
}

/// Parses rankings; the item count is taken from the first data line.
pub fn load_rankings<R: BufRead>(source: R, format: RankingFormat) -> Result<RankingDataset> {
    let mut n = None;
    let mut users = Vec::new();
    for (idx, line) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::Parse { line: line_no, message: e.to_string() })?;
        if idx < format.header_lines || line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() <= format.metadata_columns {
            return Err(Error::Parse { line: line_no, message: "no ranking columns".into() });
        }
        let ranking = fields[format.metadata_columns..]
            .iter()
            .map(|f| f.parse::<usize>().map_err(|_| Error::Parse { line: line_no, message: format!("`{f}` is not an item index") }))
            .collect::<Result<Vec<_>>>()?;
        let width = *n.get_or_insert(ranking.len());
        check_permutation(&ranking, width).map_err(|message| Error::Parse { line: line_no, message })?;
        users.push(ranking);
    }
    let n = n.ok_or(Error::EmptyDataset)?;
    Ok(RankingDataset { n, users })
}

pub fn load_rankings_path(path: &Path, format: RankingFormat) -> Result<RankingDataset> {
    let file = File::open(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    load_rankings(BufReader::new(file), format)
}

/// User x item binary preferences, one bitmask per user (bit `i` = item `i`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinaryDataset {
    n: usize,
    rows: Vec<u64>,
}

impl BinaryDataset {
    pub fn from_rows(n: usize, rows: Vec<u64>) -> Result<Self> {
        if n == 0 || n > MAX_ITEMS {
            return Err(Error::InvalidParameter(format!("item count {n} must be in 1..={MAX_ITEMS}")));
        }
        let full = full_mask(n);
        if rows.iter().any(|&r| r & !full != 0) {
            return Err(Error::InvalidParameter("row has bits beyond the item count".into()));
        }
        Ok(Self { n, rows })
    }

    pub fn from_bits(rows: &[Vec<bool>]) -> Result<Self> {
        let n = rows.first().map(Vec::len).ok_or(Error::EmptyDataset)?;
        let masks = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                if r.len() != n {
                    return Err(Error::Parse { line: i + 1, message: format!("expected {n} bits, found {}", r.len()) });
                }
                Ok(r.iter().enumerate().fold(0u64, |m, (j, &b)| m | (b as u64) << j))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(n, masks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of users.
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn bit(&self, user: usize, item: usize) -> bool {
        self.rows[user] >> item & 1 == 1
    }

    pub fn user_bits(&self, user: usize) -> Vec<bool> {
        (0..self.n).map(|i| self.bit(user, i)).collect()
    }

    /// Users `range` as a new dataset.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Self {
        Self { n: self.n, rows: self.rows[range].to_vec() }
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Marks the first `m` items of every ranking as 1 and the rest as 0.
pub fn binarize_top_m(data: &RankingDataset, m: usize) -> Result<BinaryDataset> {
    if m == 0 || m >= data.n {
        return Err(Error::InvalidParameter(format!("m = {m} must satisfy 1 <= m < n = {}", data.n)));
    }
    let rows = data.users.iter().map(|r| r[..m].iter().fold(0u64, |mask, &item| mask | 1 << item)).collect();
    BinaryDataset::from_rows(data.n, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_line_parses() {
        let d = load_rankings("2 0 1\n".as_bytes(), RankingFormat::PLAIN).unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!(d.users(), &[vec![2, 0, 1]]);
    }

    #[test]
    fn duplicate_index_names_the_line() {
        let err = load_rankings("0 1 2\n2 2 1\n".as_bytes(), RankingFormat::PLAIN).unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("duplicate"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn wrong_width_and_garbage_rejected() {
        assert!(matches!(load_rankings("0 1 2\n0 1\n".as_bytes(), RankingFormat::PLAIN), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(load_rankings("0 x 2\n".as_bytes(), RankingFormat::PLAIN), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(load_rankings("0 1 5\n".as_bytes(), RankingFormat::PLAIN), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(load_rankings("".as_bytes(), RankingFormat::PLAIN), Err(Error::EmptyDataset)));
    }

    #[test]
    fn sushi_preset_skips_header_and_metadata() {
        let text = "4 1\n0 4 3 1 0 2\n0 4 0 1 2 3\n";
        let d = load_rankings(text.as_bytes(), "sushi".parse().unwrap()).unwrap();
        assert_eq!(d.n(), 4);
        assert_eq!(d.users()[0], vec![3, 1, 0, 2]);
        assert!("bogus".parse::<RankingFormat>().is_err());
    }

    #[test]
    fn missing_file_names_path() {
        let err = load_rankings_path(Path::new("/nonexistent/rankings.order"), RankingFormat::PLAIN).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/rankings.order"));
    }

    #[test]
    fn binarize_examples() {
        let d = RankingDataset::new(3, vec![vec![2, 0, 1]]).unwrap();
        let b = binarize_top_m(&d, 1).unwrap();
        assert_eq!(b.user_bits(0), vec![false, false, true]);

        let d = RankingDataset::new(10, vec![(0..10).rev().collect(), (0..10).collect(), vec![3, 7, 1, 0, 2, 4, 5, 6, 8, 9]]).unwrap();
        for m in 1..10 {
            let b = binarize_top_m(&d, m).unwrap();
            assert!(b.rows().iter().all(|r| r.count_ones() as usize == m));
        }
        assert!(binarize_top_m(&d, 0).is_err());
        assert!(binarize_top_m(&d, 10).is_err());
    }
}
