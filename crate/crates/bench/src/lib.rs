//! Shared workload sizes for the engine benchmarks.

/// Lengths for the unbounded engines.
pub const UNBOUNDED_SIZES: [usize; 3] = [100, 400, 1000];

/// (length, height bound) pairs for the bounded engines.
pub const BOUNDED_SIZES: [(usize, usize); 3] = [(100, 5), (200, 10), (400, 20)];

/// Lengths for the height distribution, which builds every bounded row.
pub const HEIGHT_SIZES: [usize; 2] = [50, 100];
