//! Order-preserving map over independent work items.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// Rayon worker pool when the `parallel` feature is on.
    #[default]
    Parallel,
    Sequential,
}

/// Maps `f` over `items`, returning results in input order.
pub fn map<T, R, F>(mode: Mode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Mode::Parallel => {
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
    fn order_is_kept() {
        let v: Vec<u64> = (0..200).collect();
        let a = map(Mode::Parallel, &v, |x| x * x);
        let b = map(Mode::Sequential, &v, |x| x * x);
        assert_eq!(a, b);
    }
}
