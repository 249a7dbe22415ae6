//! Benchmark fixtures shared by the criterion targets.

use cubical_core::models::{base_category, cube_nerve};
use cubical_core::{BaseKind, SingleSetStructure};

/// Validated nerve of a two-object base category with connections.
pub fn nerve(kind: BaseKind, n: usize) -> SingleSetStructure {
    let b = base_category(kind, 2).expect("known base");
    cube_nerve(&b, n, true).expect("nerve validates")
}
