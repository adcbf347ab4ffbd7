//! Labeled binary trees, forests, directed graphs and o-trees; the tall and
//! long bases and their shared indexing by ordered partitions.

mod enumerate;
mod forest;
mod graph;
mod otree;
mod partition;
pub mod text;

pub use enumerate::{
    all_forests, all_graphs, all_trees, enumerate_long_graphs, enumerate_tall_forests, ordered_partitions,
    product_coefficients,
};
pub use forest::{sort_trees, Forest, Layout, Step};
pub use graph::Graph;
pub use otree::{OTree, VertexPath};
pub use partition::{ordered_partition, Basis, OrderedPartition};
pub use tree::Tree;

mod tree;
