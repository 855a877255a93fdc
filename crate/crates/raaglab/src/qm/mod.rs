//! Finite balls of the quasi-median Cayley graph of a graph product of
//! finite cyclic groups, together with their hyperplane structure.

mod ball;
mod hyperplane;
mod invasive;

pub use ball::{build_ball, QmBall, DEFAULT_VERTEX_CAP};
pub use hyperplane::{
    delta_distance, hyperplanes, separating_hyperplane_distance, Hyperplane,
};
pub use invasive::{
    construct_invasive, identify_invasive, Identification, InvasiveSubgraph, SectorSelection,
};
