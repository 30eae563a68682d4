//! Built-in run configurations reproducing the published figures.

use std::fmt;
use std::str::FromStr;

use crate::config::{Parsed, RunConfig};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8a,
    Fig8b,
    Fig9,
    Fig10,
    Fig11,
    Fig12,
}

impl Preset {
    pub const ALL: [Preset; 10] = [
        Preset::Fig4,
        Preset::Fig5,
        Preset::Fig6,
        Preset::Fig7,
        Preset::Fig8a,
        Preset::Fig8b,
        Preset::Fig9,
        Preset::Fig10,
        Preset::Fig11,
        Preset::Fig12,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
            Preset::Fig6 => "fig6",
            Preset::Fig7 => "fig7",
            Preset::Fig8a => "fig8a",
            Preset::Fig8b => "fig8b",
            Preset::Fig9 => "fig9",
            Preset::Fig10 => "fig10",
            Preset::Fig11 => "fig11",
            Preset::Fig12 => "fig12",
        }
    }

    /// The preset as TOML, with the caption values as written.
    pub fn text(self) -> &'static str {
        match self {
            Preset::Fig4 => include_str!("../presets/fig4.toml"),
            Preset::Fig5 => include_str!("../presets/fig5.toml"),
            Preset::Fig6 => include_str!("../presets/fig6.toml"),
            Preset::Fig7 => include_str!("../presets/fig7.toml"),
            Preset::Fig8a => include_str!("../presets/fig8a.toml"),
            Preset::Fig8b => include_str!("../presets/fig8b.toml"),
            Preset::Fig9 => include_str!("../presets/fig9.toml"),
            Preset::Fig10 => include_str!("../presets/fig10.toml"),
            Preset::Fig11 => include_str!("../presets/fig11.toml"),
            Preset::Fig12 => include_str!("../presets/fig12.toml"),
        }
    }

    pub fn parse(self) -> Result<Parsed, CliError> {
        RunConfig::parse(self.text())
    }

    pub fn config(self) -> Result<RunConfig, CliError> {
        Ok(self.parse()?.config)
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| {
            let names: Vec<_> = Preset::ALL.iter().map(|p| p.name()).collect();
            format!("unknown preset {s:?}; expected one of {}", names.join(", "))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_parses_cleanly() {
        for p in Preset::ALL {
            let parsed = p.parse().unwrap_or_else(|e| panic!("{p}: {e}"));
            assert!(parsed.unknown_keys.is_empty(), "{p}: {:?}", parsed.unknown_keys);
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
        assert!("fig13".parse::<Preset>().is_err());
    }
}
