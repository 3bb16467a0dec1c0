use std::fmt;
use std::sync::{OnceLock, RwLock};

/// A named formal parameter.
///
/// The first five slots are fixed so that the global term order is
/// `k, k', lambda, x, y, <user parameters in registration order>`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var(u16);

const FIXED: [&str; 5] = ["k", "k'", "lambda", "x", "y"];

fn registry() -> &'static RwLock<Vec<String>> {
    static REG: OnceLock<RwLock<Vec<String>>> = OnceLock::new();
    REG.get_or_init(|| RwLock::new(FIXED.iter().map(|s| s.to_string()).collect()))
}

impl Var {
    pub const K: Var = Var(0);
    pub const KP: Var = Var(1);
    pub const LAMBDA: Var = Var(2);
    pub const X: Var = Var(3);
    pub const Y: Var = Var(4);

    /// Looks up (or registers) a parameter by name. `kp` and `λ` are accepted
    /// as aliases of `k'` and `lambda`.
    pub fn named(name: &str) -> Var {
        let canonical = match name {
            "kp" => "k'",
            "λ" => "lambda",
            other => other,
        };
        {
            let reg = registry().read().expect("var registry poisoned");
            if let Some(i) = reg.iter().position(|s| s == canonical) {
                return Var(i as u16);
            }
        }
        let mut reg = registry().write().expect("var registry poisoned");
        if let Some(i) = reg.iter().position(|s| s == canonical) {
            return Var(i as u16);
        }
        reg.push(canonical.to_string());
        Var((reg.len() - 1) as u16)
    }

    pub fn name(self) -> String {
        registry().read().expect("var registry poisoned")[self.0 as usize].clone()
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_order_and_aliases() {
        assert!(Var::K < Var::KP && Var::KP < Var::LAMBDA && Var::X < Var::Y);
        assert_eq!(Var::named("kp"), Var::KP);
        assert_eq!(Var::named("λ"), Var::LAMBDA);
        let j = Var::named("j_test_param");
        assert!(j > Var::Y);
        assert_eq!(Var::named("j_test_param"), j);
        assert_eq!(j.name(), "j_test_param");
    }
}
