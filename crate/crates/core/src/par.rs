//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) work is spread over the rayon
//! thread pool; without it, or with [`Parallelism::Sequential`], everything
//! runs on the calling thread.

/// How to execute a batch of independent tasks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    Parallel,
}

impl Default for Parallelism {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Parallelism::Parallel
        } else {
            Parallelism::Sequential
        }
    }
}

impl Parallelism {
    /// `items.iter().map(f).collect()`, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Parallelism::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }

    /// Like [`Parallelism::map`] for fallible tasks; the first error wins.
    pub fn try_map<T, R, E, F>(self, items: &[T], f: F) -> Result<Vec<R>, E>
    where
        T: Sync,
        R: Send,
        E: Send,
        F: Fn(&T) -> Result<R, E> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Parallelism::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }

    /// Sum of `f` over `items`.
    pub fn sum<T, F>(self, items: &[T], f: F) -> num_complex::Complex64
    where
        T: Sync,
        F: Fn(&T) -> num_complex::Complex64 + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Parallelism::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).sum()
            }
            _ => items.iter().map(f).sum(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..100).collect();
        let a = Parallelism::Sequential.map(&xs, |x| x * x);
        let b = Parallelism::Parallel.map(&xs, |x| x * x);
        assert_eq!(a, b);
        let r: Result<Vec<u64>, String> = Parallelism::default().try_map(&xs, |&x| if x < 200 { Ok(x) } else { Err("big".into()) });
        assert_eq!(r.unwrap().len(), 100);
    }
}
