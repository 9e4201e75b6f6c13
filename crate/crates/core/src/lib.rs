//! Spatial-temporal heterogeneous graph learning for audio-visual diarization.
//!
//! Every person in an egocentric video, visible or not, becomes a node in a
//! per-frame graph. Visible people carry audio-visual features; the camera
//! wearer carries audio-only features. Nodes sharing a frame are connected
//! (spatial context) and nodes of the same identity are connected across a
//! short temporal window. A three-layer heterogeneous GNN then classifies
//! every node as speaking or not, and the detections are turned into
//! diarization segments that are refined by VAD fusion and voice matching.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the CLI and
//! parallel drivers live in the `sthg-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod graph;
pub mod linalg;
pub mod metrics;
pub mod model;
pub mod pipeline;
pub mod synth;
pub mod types;

pub use error::{Error, Result};
pub use graph::{build_graph, graph_density, GraphConfig};
pub use model::{ModelConfig, ModelParams, TrainHistory};
pub use pipeline::{PostConfig, VadSegments};

pub use types::{
    frame_to_time, iou, BBox, EdgeKind, FaceTrack, HeteroGraph, NodeKind, Segment, VideoBundle,
    WearerStream, WEARER_ID,
};
