//! Size caps for the exhaustive searches.
//!
//! Defaults can be overridden with `EXODROMY_CAPS`, a comma-separated list of
//! `key=value` pairs with keys `objects`, `morphisms` and `elements`, e.g.
//! `EXODROMY_CAPS=objects=128,elements=8192`.

use std::sync::OnceLock;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Object cap for equivalence checking.
    pub objects: usize,
    /// Morphism cap for equivalence checking.
    pub morphisms: usize,
    /// Element cap for finite rings.
    pub elements: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            objects: 64,
            morphisms: 4096,
            elements: 4096,
        }
    }
}

static GLOBAL: OnceLock<Caps> = OnceLock::new();

impl Caps {
    pub fn parse(spec: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Precondition(format!("bad cap entry {part:?}")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::Precondition(format!("bad cap value in {part:?}")))?;
            match key.trim() {
                "objects" => caps.objects = value,
                "morphisms" => caps.morphisms = value,
                "elements" => caps.elements = value,
                other => return Err(Error::Precondition(format!("unknown cap {other:?}"))),
            }
        }
        Ok(caps)
    }

    /// Caps read once from `EXODROMY_CAPS`, falling back to the defaults when
    /// the variable is unset or malformed.
    pub fn global() -> Caps {
        *GLOBAL.get_or_init(|| {
            std::env::var("EXODROMY_CAPS")
                .ok()
                .and_then(|s| Caps::parse(&s).ok())
                .unwrap_or_default()
        })
    }

    pub(crate) fn ensure(what: &'static str, actual: usize, cap: usize) -> Result<()> {
        if actual > cap {
            Err(Error::CapExceeded { what, actual, cap })
        } else {
            Ok(())
        }
    }
}
