//! Ranking data in, welfare-by-`k` tables out.

mod config;
mod data;
mod infer;
mod sweep;
mod synthetic;
mod tree;

pub use config::EmpiricalConfig;
pub use data::{binarize_top_m, load_rankings, load_rankings_path, BinaryDataset, RankingDataset, RankingFormat, MAX_ITEMS};
pub use infer::infer_conditional_mode;
pub use sweep::{
    mistakes_at_k, sweep, sweep_split, FrontierPoint, SweepOptions, SweepRow, SweepTable, FRONTIER_CSV_HEADER, SWEEP_CSV_HEADER,
};
pub use synthetic::{to_sushi_order, SyntheticRankings};
pub use tree::{build_tree, elicit, multi_output_gains, Elicitation, ElicitationTree, QueryOrder, TreeNode};
