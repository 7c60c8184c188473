//! Sequential and data-parallel execution of index-range sweeps.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExecMode {
    Sequential,
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

/// Applies `f` to every index in `0..n`, keeping the `Some` results in
/// index order.
pub fn filter_map_range<T, F>(mode: ExecMode, n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().filter_map(f).collect()
        }
        _ => (0..n).filter_map(f).collect(),
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map_slice<T, U, F>(mode: ExecMode, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let f = |i: u64| (i % 7 == 3).then_some(i * 2);
        let a = filter_map_range(ExecMode::Sequential, 1000, f);
        let b = filter_map_range(ExecMode::Parallel, 1000, f);
        assert_eq!(a, b);
        assert_eq!(a[0], 6);
        let xs: Vec<u32> = (0..50).collect();
        assert_eq!(
            map_slice(ExecMode::Sequential, &xs, |x| x + 1),
            map_slice(ExecMode::Parallel, &xs, |x| x + 1)
        );
    }
}
