//! Registry of verified results and the checks that exercise them.

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Triangle,
    QuadEf,
    QuadGeneral,
    CommonTangents,
    Isoperiodic,
}

impl Suite {
    pub const ALL: [Suite; 5] =
        [Suite::CommonTangents, Suite::Triangle, Suite::QuadEf, Suite::QuadGeneral, Suite::Isoperiodic];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Triangle => "triangle",
            Suite::QuadEf => "quad-ef",
            Suite::QuadGeneral => "quad-general",
            Suite::CommonTangents => "common-tangents",
            Suite::Isoperiodic => "isoperiodic",
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Statement {
    pub id: &'static str,
    pub text: &'static str,
}

pub const RESULTS: &[Statement] = &[
    Statement { id: "focal-property", text: "the tangent at X bisects the angle between XF and the perpendicular from X to the directrix" },
    Statement { id: "tangents-from-point", text: "tangents from a point to the parabola and their second intersections with the circle" },
    Statement { id: "common-tangent-locus", text: "common-tangent points lie on 2x + p = 0 or on the conic H(E, p)" },
    Statement { id: "common-tangent-quartic", text: "at most four common tangents; their abscissae solve an explicit quartic" },
    Statement { id: "focal-circle-common-tangents", text: "for E = F the common-tangent points are (-p/2, +-sqrt(4 - p^2)/2)" },
    Statement { id: "triangle-tangency-criterion", text: "triangle ABC circumscribes the conic non-trivially iff S_BB S_CC = S_BC^2" },
    Statement { id: "triangle-defect-factorization", text: "S_BB S_CC - S_BC^2 factors through S_AA, Q(E) and f(A, E, p)" },
    Statement { id: "circle-parabola-point-partner", text: "for A on both curves, f(B) = f(A) Q(E) / (p + x_A)^2 at the far end B of the tangent at A" },
    Statement { id: "common-tangent-point-partner", text: "on a circle through the focus, the non-common tangent from a common-tangent point ends on the parabola" },
    Statement { id: "focal-circle-triangle-closure", text: "a Poncelet triangle exists iff the circle passes through the focus, and then from every admissible vertex" },
    Statement { id: "directrix-kite-parallel", text: "T2F is parallel to BE exactly when the circle passes through the focus" },
    Statement { id: "pencil-discriminant-identity", text: "the pencils lambda D + P and mu D + H have proportional discriminants" },
    Statement { id: "pencil-degenerate-count", text: "both pencils have the same number of real degenerate members" },
    Statement { id: "euler-centers", text: "orthocenter on the directrix; centroid and nine-point center on lines parallel to it" },
    Statement { id: "orthocenter-first-triangle", text: "a triangle built from a directrix point O and two tangents circumscribes the parabola with orthocenter O" },
    Statement { id: "pedal-midpoints", text: "side midpoints of Poncelet polygons lie on the pedal curve about the circle center" },
    Statement { id: "pedal-cubic", text: "the pedal curve of the parabola about E is an explicit cubic, self-crossing iff E is outside" },
    Statement { id: "orthocenter-extremes", text: "the orthocenter range ends at triangles with a vertex at a common-tangent point" },
    Statement { id: "euler-point-segment", text: "every Euler-line point traces a segment whose ends come from the common-tangent vertices" },
    Statement { id: "butterfly-properties", text: "for E = F: congruent opposite sides, vertical diagonals, side midpoints on x = -p/2" },
    Statement { id: "directrix-circle-chord", text: "a tangent chord of a circle about the focus has both ends on a radius-R circle about a directrix point" },
    Statement { id: "directrix-circle-per-side", text: "every side of a Poncelet quadrilateral about the focus has such a directrix point" },
    Statement { id: "directrix-circle-tangent", text: "two circles of radius R about the focus and a directrix point meet in a tangent chord" },
    Statement { id: "partner-abscissa-chord", text: "circle points with x_A + x_B = -p span a tangent chord" },
    Statement { id: "vertex-tangent-circle-tangent", text: "the circle tangent where the vertex tangent meets the circle also touches the parabola" },
    Statement { id: "centered-quad-existence", text: "a circle about the focus with diameter above the focal distance carries Poncelet quadrilaterals from every admissible vertex" },
    Statement { id: "trapezoid-inscribed-parabola", text: "the butterfly of an isosceles trapezoid circumscribes a parabola focused at the circumcenter" },
    Statement { id: "prescribed-diagonal-point", text: "given E off the circle and a vertex A, a unique parabola focused at the center gives a quadrilateral with side crossing E" },
    Statement { id: "butterfly-inverse-points", text: "opposite-side crossings of a butterfly are inverse in its circumcircle" },
    Statement { id: "confocal-chord-parabola", text: "each chord missing the focus and not parallel to the axis touches exactly one confocal parabola" },
    Statement { id: "pivot-quad", text: "with the directrix through L, every admissible vertex starts a closing quadrilateral with diagonal point L and the listed centers" },
    Statement { id: "directrix-through-pivot", text: "a 4-Poncelet pair with E != F has L on the directrix" },
    Statement { id: "confocal-uniqueness", text: "exactly one member of a confocal family forms a 4-Poncelet pair with a circle not centered at the focus" },
    Statement { id: "cyclic-quad-inscribed-parabola", text: "a parabola is inscribed in a cyclic quadrilateral iff its focus is IJ x EL and its directrix passes through L" },
    Statement { id: "isoperiodic-families", text: "confocal families are 3-isoperiodic iff F is on the circle and 4-isoperiodic iff F is the center; pivoting families at L are 4-isoperiodic" },
];

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CheckDef {
    pub id: &'static str,
    pub suite: Suite,
    pub result: &'static str,
    pub tolerance: f64,
}

const fn check(id: &'static str, suite: Suite, result: &'static str, tolerance: f64) -> CheckDef {
    CheckDef { id, suite, result, tolerance }
}

use Suite::*;

pub const CHECKS: &[CheckDef] = &[
    check("common-tangents.focal-property", CommonTangents, "focal-property", 1e-9),
    check("common-tangents.tangent-pair", CommonTangents, "tangents-from-point", 1e-9),
    check("common-tangents.compass-construction", CommonTangents, "tangents-from-point", 1e-9),
    check("common-tangents.locus", CommonTangents, "common-tangent-locus", 1e-8),
    check("common-tangents.quartic", CommonTangents, "common-tangent-quartic", 1e-8),
    check("common-tangents.focal-circle", CommonTangents, "focal-circle-common-tangents", 1e-12),
    check("triangle.oracle-closure", Triangle, "focal-circle-triangle-closure", 1e-8),
    check("triangle.tangency-criterion", Triangle, "triangle-tangency-criterion", 0.0),
    check("triangle.defect-factorization", Triangle, "triangle-defect-factorization", 1e-8),
    check("triangle.parabola-point-partner", Triangle, "circle-parabola-point-partner", 1e-8),
    check("triangle.common-tangent-partner", Triangle, "common-tangent-point-partner", 1e-8),
    check("triangle.directrix-kite", Triangle, "directrix-kite-parallel", 0.0),
    check("triangle.pencil-discriminant", Triangle, "pencil-discriminant-identity", 1e-8),
    check("triangle.pencil-count", Triangle, "pencil-degenerate-count", 0.0),
    check("triangle.euler-centers", Triangle, "euler-centers", 1e-9),
    check("triangle.orthocenter-construction", Triangle, "orthocenter-first-triangle", 1e-8),
    check("triangle.pedal-midpoints", Triangle, "pedal-midpoints", 1e-8),
    check("triangle.pedal-cubic", Triangle, "pedal-cubic", 1e-9),
    check("triangle.orthocenter-extremes", Triangle, "orthocenter-extremes", 1e-6),
    check("triangle.euler-segment", Triangle, "euler-point-segment", 1e-6),
    check("quad-ef.existence", QuadEf, "centered-quad-existence", 1e-8),
    check("quad-ef.butterfly-shape", QuadEf, "butterfly-properties", 1e-9),
    check("quad-ef.inverse-points", QuadEf, "butterfly-inverse-points", 1e-8),
    check("quad-ef.directrix-circle-chord", QuadEf, "directrix-circle-chord", 1e-9),
    check("quad-ef.directrix-circle-sides", QuadEf, "directrix-circle-per-side", 1e-9),
    check("quad-ef.directrix-circle-tangent", QuadEf, "directrix-circle-tangent", 1e-9),
    check("quad-ef.partner-abscissa", QuadEf, "partner-abscissa-chord", 1e-9),
    check("quad-ef.vertex-tangent-circle", QuadEf, "vertex-tangent-circle-tangent", 1e-12),
    check("quad-ef.trapezoid-round-trip", QuadEf, "trapezoid-inscribed-parabola", 1e-8),
    check("quad-ef.prescribed-diagonal-point", QuadEf, "prescribed-diagonal-point", 1e-7),
    check("quad-ef.confocal-chord", QuadEf, "confocal-chord-parabola", 1e-9),
    check("quad-general.closure", QuadGeneral, "pivot-quad", 1e-8),
    check("quad-general.diagonal-point", QuadGeneral, "pivot-quad", 1e-8),
    check("quad-general.anticenter", QuadGeneral, "pivot-quad", 1e-8),
    check("quad-general.vertex-sum", QuadGeneral, "pivot-quad", 1e-8),
    check("quad-general.root-sum", QuadGeneral, "pivot-quad", 1e-8),
    check("quad-general.nine-point-circle", QuadGeneral, "pivot-quad", 1e-7),
    check("quad-general.directrix-through-pivot", QuadGeneral, "directrix-through-pivot", 1e-7),
    check("quad-general.uniqueness", QuadGeneral, "confocal-uniqueness", 1e-8),
    check("quad-general.inscribed-round-trip", QuadGeneral, "cyclic-quad-inscribed-parabola", 1e-7),
    check("isoperiodic.confocal", Isoperiodic, "isoperiodic-families", 1e-8),
    check("isoperiodic.pivoting", Isoperiodic, "isoperiodic-families", 1e-8),
];

pub fn check_def(id: &str) -> &'static CheckDef {
    CHECKS.iter().find(|c| c.id == id).unwrap_or_else(|| panic!("unregistered check {id}"))
}

pub fn statement(id: &str) -> &'static Statement {
    RESULTS.iter().find(|r| r.id == id).unwrap_or_else(|| panic!("unregistered result {id}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn every_result_is_reachable() {
        for r in RESULTS {
            assert!(CHECKS.iter().any(|c| c.result == r.id), "no check exercises {}", r.id);
        }
    }

    #[test]
    fn every_check_names_one_result() {
        let ids: HashSet<&str> = RESULTS.iter().map(|r| r.id).collect();
        assert_eq!(ids.len(), RESULTS.len());
        let mut seen = HashSet::new();
        for c in CHECKS {
            assert!(ids.contains(c.result), "{} names unknown result {}", c.id, c.result);
            assert!(seen.insert(c.id), "duplicate check {}", c.id);
            assert!(c.id.starts_with(c.suite.name()), "{} filed under {}", c.id, c.suite.name());
        }
    }

    #[test]
    fn registry_size() {
        assert_eq!(RESULTS.len(), 35);
        assert!(Suite::ALL.iter().all(|s| CHECKS.iter().any(|c| c.suite == *s)));
    }
}
