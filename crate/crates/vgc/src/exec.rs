//! Execution-mode plumbing: data-parallel map/all helpers with a sequential
//! fallback.
//!
//! The heavy verification stages (orbit scans, the 216-element substitution
//! compatibility check, certificate grids) are embarrassingly parallel over
//! their input slices, and every helper here preserves input order, so both
//! modes produce identical output. When the `parallel` feature is disabled,
//! `Parallel` silently degrades to sequential execution.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
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

/// Order-preserving map over a slice.
pub fn map_vec<T, U, F>(mode: ExecMode, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.iter().map(f).collect(),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                items.par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                items.iter().map(f).collect()
            }
        }
    }
}

/// True when `f` holds for every item.
pub fn all_of<T, F>(mode: ExecMode, items: &[T], f: F) -> bool
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.iter().all(f),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                items.par_iter().all(f)
            }
            #[cfg(not(feature = "parallel"))]
            {
                items.iter().all(f)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree_and_preserve_order() {
        let xs: Vec<i64> = (0..1000).collect();
        let seq = map_vec(ExecMode::Sequential, &xs, |x| x * x - 7);
        let par = map_vec(ExecMode::Parallel, &xs, |x| x * x - 7);
        assert_eq!(seq, par);
        assert_eq!(seq[3], 2);
    }

    #[test]
    fn all_of_agrees_across_modes() {
        let xs: Vec<i64> = (1..500).collect();
        assert!(all_of(ExecMode::Sequential, &xs, |x| *x > 0));
        assert!(all_of(ExecMode::Parallel, &xs, |x| *x > 0));
        assert!(!all_of(ExecMode::Parallel, &xs, |x| *x < 400));
    }
}
