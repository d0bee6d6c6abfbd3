//! System definition files: named substitution components, the union
//! list composing the space, and default search bounds. The format is
//! TOML; `configs/` ships commented examples.
//!
//! ```toml
//! [components.fib]
//! a = "ab"
//! b = "a"
//!
//! [space]
//! union = ["fib"]
//!
//! [bounds]        # optional, these are the defaults
//! window = 3
//! shift = 2
//! coeff = 3
//! budget = 1000000
//! ```

use crate::systems::{Substitution, SubshiftComponent, SystemSpace};
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigError {
    Io(String),
    Parse(String),
    /// A union entry naming no declared component.
    UnknownComponent(String),
    /// A component named twice in the union list.
    DuplicateUnionEntry(String),
    /// A substitution or space that fails validation.
    Invalid(String),
    /// `allow_nonprimitive` was set; only primitive components are
    /// supported.
    NonprimitiveUnsupported,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io(m) => write!(f, "cannot read config: {}", m),
            ConfigError::Parse(m) => write!(f, "cannot parse config: {}", m),
            ConfigError::UnknownComponent(n) => {
                write!(f, "union entry '{}' names no declared component", n)
            }
            ConfigError::DuplicateUnionEntry(n) => {
                write!(f, "component '{}' appears twice in the union", n)
            }
            ConfigError::Invalid(m) => write!(f, "invalid system: {}", m),
            ConfigError::NonprimitiveUnsupported => write!(
                f,
                "allow_nonprimitive is set, but only primitive substitutions are \
                 supported; remove the flag and make every component primitive"
            ),
        }
    }
}

impl std::error::Error for ConfigError {}

/// Default bounds a config may override: window length, shift range,
/// coefficient range, and search budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub window: usize,
    pub shift: i64,
    pub coeff: i64,
    pub budget: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { window: 3, shift: 2, coeff: 3, budget: 1_000_000 }
    }
}

/// A parsed system definition, not yet validated as a space.
#[derive(Debug, Clone)]
pub struct SystemConfig {
    rules: BTreeMap<String, Vec<(char, String)>>,
    union: Vec<String>,
    pub bounds: Bounds,
}

#[derive(serde::Deserialize)]
struct RawConfig {
    components: BTreeMap<String, BTreeMap<String, String>>,
    space: RawSpace,
    #[serde(default)]
    bounds: RawBounds,
}

#[derive(serde::Deserialize)]
struct RawSpace {
    union: Vec<String>,
    #[serde(default)]
    allow_nonprimitive: bool,
}

#[derive(serde::Deserialize, Default)]
struct RawBounds {
    window: Option<usize>,
    shift: Option<i64>,
    coeff: Option<i64>,
    budget: Option<usize>,
}

pub fn parse_config(text: &str) -> Result<SystemConfig, ConfigError> {
    let raw: RawConfig =
        toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
    if raw.space.allow_nonprimitive {
        return Err(ConfigError::NonprimitiveUnsupported);
    }
    let mut rules = BTreeMap::new();
    for (name, table) in raw.components {
        let mut component_rules = Vec::new();
        for (letter, image) in table {
            let mut chars = letter.chars();
            let c = chars.next().ok_or_else(|| {
                ConfigError::Invalid(format!("component '{}': empty letter key", name))
            })?;
            if chars.next().is_some() {
                return Err(ConfigError::Invalid(format!(
                    "component '{}': letter key '{}' must be a single character",
                    name, letter
                )));
            }
            component_rules.push((c, image));
        }
        rules.insert(name, component_rules);
    }
    let mut seen = std::collections::BTreeSet::new();
    for name in &raw.space.union {
        if !rules.contains_key(name) {
            return Err(ConfigError::UnknownComponent(name.clone()));
        }
        if !seen.insert(name.clone()) {
            return Err(ConfigError::DuplicateUnionEntry(name.clone()));
        }
    }
    let defaults = Bounds::default();
    let bounds = Bounds {
        window: raw.bounds.window.unwrap_or(defaults.window),
        shift: raw.bounds.shift.unwrap_or(defaults.shift),
        coeff: raw.bounds.coeff.unwrap_or(defaults.coeff),
        budget: raw.bounds.budget.unwrap_or(defaults.budget),
    };
    Ok(SystemConfig { rules, union: raw.space.union, bounds })
}

pub fn load_config(path: &Path) -> Result<SystemConfig, ConfigError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| ConfigError::Io(e.to_string()))?;
    parse_config(&text)
}

impl SystemConfig {
    /// Component order of the space: the union list as declared.
    pub fn union(&self) -> &[String] {
        &self.union
    }

    /// Validates every component and composes the space. Primitivity
    /// failures surface with the component named.
    pub fn build_space(&self) -> Result<Arc<SystemSpace>, ConfigError> {
        let mut components = Vec::new();
        for name in &self.union {
            let rules: Vec<(char, &str)> = self.rules[name]
                .iter()
                .map(|(c, img)| (*c, img.as_str()))
                .collect();
            let substitution = Substitution::new(&rules).map_err(|e| {
                ConfigError::Invalid(format!("component '{}': {}", name, e))
            })?;
            let component = SubshiftComponent::new(name, substitution).map_err(|e| {
                ConfigError::Invalid(format!("component '{}': {}", name, e))
            })?;
            components.push(component);
        }
        SystemSpace::new(components)
            .map(Arc::new)
            .map_err(|e| ConfigError::Invalid(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIB: &str = r#"
        [components.fib]
        a = "ab"
        b = "a"

        [space]
        union = ["fib"]
    "#;

    #[test]
    fn parses_and_builds_a_single_component_space() {
        let cfg = parse_config(FIB).unwrap();
        assert_eq!(cfg.union(), ["fib"]);
        assert_eq!(cfg.bounds, Bounds::default());
        let space = cfg.build_space().unwrap();
        assert_eq!(space.components().len(), 1);
        assert_eq!(space.components()[0].name(), "fib");
        assert_eq!(space.components()[0].language(1).len(), 2);
    }

    #[test]
    fn union_order_is_the_declaration_order() {
        let text = r#"
            [components.tm]
            a = "ab"
            b = "ba"
            [components.fib]
            a = "ab"
            b = "a"
            [space]
            union = ["tm", "fib"]
        "#;
        let space = parse_config(text).unwrap().build_space().unwrap();
        let names: Vec<&str> =
            space.components().iter().map(|c| c.name()).collect();
        assert_eq!(names, ["tm", "fib"]);
    }

    #[test]
    fn bounds_override_defaults() {
        let text = format!("{}\n[bounds]\nwindow = 5\nbudget = 10", FIB);
        let cfg = parse_config(&text).unwrap();
        assert_eq!(cfg.bounds.window, 5);
        assert_eq!(cfg.bounds.budget, 10);
        assert_eq!(cfg.bounds.shift, 2);
        assert_eq!(cfg.bounds.coeff, 3);
    }

    #[test]
    fn rejects_bad_unions_and_flags() {
        let unknown = r#"
            [components.fib]
            a = "ab"
            b = "a"
            [space]
            union = ["fib", "ghost"]
        "#;
        assert!(matches!(
            parse_config(unknown),
            Err(ConfigError::UnknownComponent(n)) if n == "ghost"
        ));

        let doubled = r#"
            [components.fib]
            a = "ab"
            b = "a"
            [space]
            union = ["fib", "fib"]
        "#;
        assert!(matches!(
            parse_config(doubled),
            Err(ConfigError::DuplicateUnionEntry(_))
        ));

        let flagged = format!("{}", FIB).replace(
            "union = [\"fib\"]",
            "union = [\"fib\"]\nallow_nonprimitive = true",
        );
        assert!(matches!(
            parse_config(&flagged),
            Err(ConfigError::NonprimitiveUnsupported)
        ));
    }

    #[test]
    fn validation_failures_name_the_component() {
        let reducible = r#"
            [components.bad]
            a = "a"
            b = "b"
            [space]
            union = ["bad"]
        "#;
        let err = parse_config(reducible).unwrap().build_space().unwrap_err();
        match err {
            ConfigError::Invalid(msg) => {
                assert!(msg.contains("bad"), "message was: {}", msg)
            }
            other => panic!("expected Invalid, got {:?}", other),
        }

        let bad_letter = r#"
            [components.x]
            ab = "ab"
            [space]
            union = ["x"]
        "#;
        assert!(matches!(parse_config(bad_letter), Err(ConfigError::Invalid(_))));
    }

    #[test]
    fn shipped_configs_parse_and_build() {
        let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs");
        for file in ["fib.cfg", "tm.cfg", "fib_tm_union.cfg"] {
            let path = format!("{}/{}", dir, file);
            let cfg = load_config(Path::new(&path)).unwrap();
            let space = cfg.build_space().unwrap();
            assert!(!space.components().is_empty(), "{}", file);
        }
    }
}
