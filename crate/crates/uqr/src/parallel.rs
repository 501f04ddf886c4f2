//! Iteration macros that switch between rayon and plain iterators.

/// Iterate an owned collection or range in parallel.
#[cfg(feature = "parallel")]
#[macro_export]
macro_rules! iter_par {
    ($iter:expr) => {{
        use rayon::prelude::*;
        $iter.into_par_iter()
    }};
}

/// Iterate an owned collection or range in parallel.
#[cfg(not(feature = "parallel"))]
#[macro_export]
macro_rules! iter_par {
    ($iter:expr) => {{
        $iter.into_iter()
    }};
}

/// Iterate a slice in parallel.
#[cfg(feature = "parallel")]
#[macro_export]
macro_rules! iter_slice_par {
    ($slice:expr) => {{
        use rayon::prelude::*;
        $slice.par_iter()
    }};
}

/// Iterate a slice in parallel.
#[cfg(not(feature = "parallel"))]
#[macro_export]
macro_rules! iter_slice_par {
    ($slice:expr) => {{
        $slice.iter()
    }};
}

/// True when the crate was built with the rayon backend.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

/// Traits needed to call adaptor methods on the output of the macros.
pub mod prelude {
    #[cfg(feature = "parallel")]
    pub use rayon::prelude::*;
}

/// Runs two closures, concurrently under the rayon backend.
pub fn join<A, B, RA, RB>(a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    #[cfg(feature = "parallel")]
    {
        rayon::join(a, b)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (a(), b())
    }
}
