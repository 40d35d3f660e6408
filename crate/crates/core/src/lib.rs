//! Online proper coloring of unit interval graphs with bounded recourse.
//!
//! Intervals are `[x, x + 1)` with exact rational `x`. The [`incremental`]
//! engine keeps a proper `k`-coloring (`k` = current clique bound) under
//! insertions, recoloring only a window found by a local scan.

pub mod adversary;
pub mod circular;
pub mod coloring;
pub mod completion;
pub mod coord;
pub mod incremental;
pub mod error;
pub mod frogs;
pub mod interval;
pub mod oracle;
pub mod sequenced;
pub mod session;
pub mod workload;

pub use coloring::{check_positional, is_proper, max_clique, verify_proper, Coloring, Violation};
pub use coord::Coord;
pub use error::{Error, Result};
pub use interval::{intersects, span_of, Color, CliqueSpan, OrderKey, UnitInterval};
pub use sequenced::SequencedSet;
