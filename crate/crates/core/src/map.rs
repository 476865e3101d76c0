use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;

type MapFn<P> = dyn Fn(&P) -> core::result::Result<P, String> + Send + Sync;

/// A self-mapping `T: X -> X`, possibly partial.
///
/// Evaluation returns `Err(reason)` when `T` is undefined at the argument;
/// orbit generators attach the index at which that happened.
pub struct SelfMap<P> {
    label: String,
    f: Arc<MapFn<P>>,
}

impl<P> Clone for SelfMap<P> {
    fn clone(&self) -> Self {
        SelfMap {
            label: self.label.clone(),
            f: Arc::clone(&self.f),
        }
    }
}

impl<P> fmt::Debug for SelfMap<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SelfMap").field("label", &self.label).finish()
    }
}

impl<P> SelfMap<P> {
    pub fn new<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(&P) -> core::result::Result<P, String> + Send + Sync + 'static,
    {
        SelfMap {
            label: label.into(),
            f: Arc::new(f),
        }
    }

    /// A map defined everywhere.
    pub fn total<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(&P) -> P + Send + Sync + 'static,
    {
        Self::new(label, move |x| Ok(f(x)))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn apply(&self, x: &P) -> core::result::Result<P, String> {
        (self.f)(x)
    }
}

impl<P: Clone + 'static> SelfMap<P> {
    pub fn identity() -> Self {
        Self::total("identity", |x: &P| x.clone())
    }
}

/// Real maps used throughout the examples and the CLI registry.
pub mod real {
    use super::SelfMap;
    use alloc::format;

    /// `Tx = lambda * ln(1 + x)`, defined for `x > -1`.
    pub fn banach_ln(lambda: f64) -> SelfMap<f64> {
        SelfMap::new(format!("banach_ln({lambda})"), move |&x: &f64| {
            if x > -1.0 {
                Ok(lambda * libm::log1p(x))
            } else {
                Err(format!("ln(1 + x) undefined at x = {x}"))
            }
        })
    }

    pub fn half() -> SelfMap<f64> {
        SelfMap::total("half", |&x: &f64| x / 2.0)
    }

    pub fn square() -> SelfMap<f64> {
        SelfMap::total("square", |&x: &f64| x * x)
    }

    /// `Tx = a x + b`.
    pub fn affine(a: f64, b: f64) -> SelfMap<f64> {
        SelfMap::total(format!("affine({a}, {b})"), move |&x: &f64| a * x + b)
    }

    /// `Tx = r x (1 - x)`.
    pub fn logistic(r: f64) -> SelfMap<f64> {
        SelfMap::total(format!("logistic({r})"), move |&x: &f64| r * x * (1.0 - x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn banach_ln_rejects_outside_domain() {
        let t = real::banach_ln(0.5);
        assert!((t.apply(&1.0).unwrap() - 0.5 * core::f64::consts::LN_2).abs() < 1e-15);
        assert!(t.apply(&-2.0).is_err());
    }

    #[test]
    fn builtin_real_maps() {
        assert_eq!(real::half().apply(&3.0).unwrap(), 1.5);
        assert_eq!(real::square().apply(&3.0).unwrap(), 9.0);
        assert_eq!(real::affine(2.0, 1.0).apply(&3.0).unwrap(), 7.0);
        assert_eq!(real::logistic(2.0).apply(&0.5).unwrap(), 0.5);
        assert_eq!(SelfMap::<f64>::identity().apply(&4.0).unwrap(), 4.0);
    }
}
