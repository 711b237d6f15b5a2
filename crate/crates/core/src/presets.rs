//! Shipped point sets and construction choices for the worked figures.

use crate::error::{Error, Result};
use crate::geom::PointSet;
use crate::halving_partition::{ConstructionChoices, ExtendSide, StarSide, WType};
use crate::io::parse_pointset;

pub const POINT_PRESETS: [&str; 6] = ["fig2", "fig4", "fig5", "fig6", "fig7", "fig8"];

fn preset_text(name: &str) -> Option<&'static str> {
    Some(match name {
        "fig2" => include_str!("../presets/fig2.points"),
        "fig4" => include_str!("../presets/fig4.points"),
        "fig5" => include_str!("../presets/fig5.points"),
        "fig6" => include_str!("../presets/fig6.points"),
        "fig7" => include_str!("../presets/fig7.points"),
        "fig8" => include_str!("../presets/fig8.points"),
        _ => return None,
    })
}

/// Point set of a named preset.
pub fn preset_points(name: &str) -> Result<PointSet> {
    let text = preset_text(name)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown preset `{name}`; known: {POINT_PRESETS:?}")))?;
    parse_pointset(text)
}

/// Which construction a halving preset drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    SymmetricCaterpillar,
    WCaterpillar,
}

/// A point set plus the choices that redraw a figure's trees.
#[derive(Debug, Clone, PartialEq)]
pub struct HalvingPreset {
    pub points: PointSet,
    pub construction: Construction,
    pub r: usize,
    pub choices: ConstructionChoices,
    /// Whether the point set satisfies the hypothesis for `r`; when false the
    /// figure is redrawn with the unchecked builder.
    pub hypothesis_holds: bool,
}

pub const HALVING_PRESETS: [&str; 3] = ["fig6", "fig7", "fig8"];

pub fn halving_preset(name: &str) -> Result<HalvingPreset> {
    let points = preset_points(name)?;
    let preset = match name {
        // Fig. 6(a): fan line v1v5 starred at v5, then v1v6.
        "fig6" => HalvingPreset {
            points,
            construction: Construction::SymmetricCaterpillar,
            r: 2,
            choices: ConstructionChoices {
                fan_line: Some((1, 5)),
                star_side: StarSide::High,
                extend_side: vec![ExtendSide::Right],
                type4: WType::Type1,
                anchor: Some(0),
            },
            hypothesis_holds: true,
        },
        // Fig. 7(a): Type-1, fan line v8v12 starred at v8, then v8v0.
        "fig7" => HalvingPreset {
            points,
            construction: Construction::WCaterpillar,
            r: 3,
            choices: ConstructionChoices {
                fan_line: Some((8, 12)),
                star_side: StarSide::Low,
                extend_side: vec![ExtendSide::Right],
                type4: WType::Type1,
                anchor: Some(0),
            },
            hypothesis_holds: false,
        },
        // Fig. 8(a): Type-2, fan line v8v12 starred at v12, then v12v7.
        "fig8" => HalvingPreset {
            points,
            construction: Construction::WCaterpillar,
            r: 3,
            choices: ConstructionChoices {
                fan_line: Some((8, 12)),
                star_side: StarSide::High,
                extend_side: vec![ExtendSide::Left],
                type4: WType::Type2,
                anchor: Some(0),
            },
            hypothesis_holds: false,
        },
        other => {
            return Err(Error::InvalidParameter(format!(
                "no construction preset `{other}`; known: {HALVING_PRESETS:?}"
            )))
        }
    };
    Ok(preset)
}
