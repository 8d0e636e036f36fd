//! Cooperative wall-clock limits for long Groebner computations.
//!
//! A deadline is installed per thread for the duration of a closure; the
//! Buchberger loop polls it between S-pairs. Worker pools install the
//! deadline inside each task.

use std::cell::Cell;
use std::time::Instant;

use super::GroebnerError;

thread_local! {
    static DEADLINE: Cell<Option<Instant>> = const { Cell::new(None) };
}

/// Runs `f` with `deadline` active on the current thread, restoring the
/// previous deadline afterwards. An earlier outer deadline wins.
pub fn with_deadline<T>(deadline: Option<Instant>, f: impl FnOnce() -> T) -> T {
    let previous = DEADLINE.with(|d| d.get());
    let effective = match (previous, deadline) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    DEADLINE.with(|d| d.set(effective));
    struct Restore(Option<Instant>);
    impl Drop for Restore {
        fn drop(&mut self) {
            DEADLINE.with(|d| d.set(self.0));
        }
    }
    let _restore = Restore(previous);
    f()
}

pub fn current_deadline() -> Option<Instant> {
    DEADLINE.with(|d| d.get())
}

pub(crate) fn check() -> Result<(), GroebnerError> {
    match current_deadline() {
        Some(t) if Instant::now() >= t => Err(GroebnerError::Timeout),
        _ => Ok(()),
    }
}
