use std::panic::{self, AssertUnwindSafe};
use std::sync::Once;

/// Unwind payload raised when an engine runs out of fuel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FuelExhausted;

static HOOK: Once = Once::new();

/// Keeps the default panic hook quiet about fuel exhaustion.
fn install_hook() {
    HOOK.call_once(|| {
        let prev = panic::take_hook();
        panic::set_hook(Box::new(move |info| {
            if !info.payload().is::<FuelExhausted>() {
                prev(info);
            }
        }));
    });
}

pub(super) fn exhausted() -> ! {
    panic::panic_any(FuelExhausted)
}

/// Runs `f`, turning a fuel unwind into `Err`. Other panics propagate.
pub(super) fn catch<T>(f: impl FnOnce() -> T) -> Result<T, FuelExhausted> {
    install_hook();
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(v) => Ok(v),
        Err(p) if p.is::<FuelExhausted>() => Err(FuelExhausted),
        Err(p) => panic::resume_unwind(p),
    }
}
