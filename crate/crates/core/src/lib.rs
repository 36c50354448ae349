//! Semantic Brand Score analytics over text corpora.
//!
//! The pipeline runs in five stages, each in its own module:
//!
//! - [`corpus`]: load documents and lexicons, compute descriptive statistics
//!   (tokens, types, type/token ratio, long-word share, emotion counts).
//! - [`textprep`]: tokenize, drop stop-words and stem with a Snowball stemmer.
//! - [`network`]: build the undirected weighted co-occurrence network with a
//!   sliding window, filter weak edges and merge concept clusters.
//! - [`metrics`]: prevalence, diversity and weighted betweenness connectivity,
//!   z-standardized and summed into the Semantic Brand Score.
//! - [`semantics`]: association lists, cosine concept distances and a classical
//!   MDS embedding of those distances.
//!
//! Every export produced by this crate is byte-deterministic for identical inputs.

#![forbid(unsafe_code)]

pub mod corpus;
pub mod error;
pub mod metrics;
pub mod network;
pub mod semantics;
pub mod textprep;

mod format;

pub use error::{Error, Result};
