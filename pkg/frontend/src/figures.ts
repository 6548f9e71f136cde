/**
 * Figure definitions: which CSV feeds each panel, which columns are drawn,
 * and the hard-coded axis framing (fixed ranges keep reruns byte-identical
 * and comparable across parameter sets).
 */

export interface CurveSpec {
  column: string;
  color: string;
  dashed?: boolean;
  label: string;
}

export interface PanelSpec {
  id: string; // panel letter
  csv: string; // file inside the csv directory
  x: string;
  xRange: [number, number];
  yRange: [number, number];
  yLabel: string;
  curves: CurveSpec[];
}

export interface FigureSpec {
  id: string;
  title: string;
  columns: number; // grid columns of the panel layout
  panels: PanelSpec[];
}

const BLUE = "#1f77b4";
const RED = "#d62728";

function fourPanels(
  fig: string,
  xMax: number,
  labels: [string, string],
  ranges: { a: [number, number]; b: [number, number]; c: [number, number]; d: [number, number] },
  suffixes: [string, string],
): PanelSpec[] {
  const [s1, s2] = suffixes;
  const [l1, l2] = labels;
  const x: [number, number] = [0, xMax];
  return [
    {
      id: "a", csv: `${fig}_a.csv`, x: "alpha", xRange: x, yRange: ranges.a, yLabel: "gain",
      curves: [
        { column: `gain_${s1}`, color: BLUE, label: l1 },
        { column: `gain_${s2}`, color: RED, label: l2 },
      ],
    },
    {
      id: "b", csv: `${fig}_b.csv`, x: "alpha", xRange: x, yRange: ranges.b, yLabel: "fidelity",
      curves: [
        { column: `fidelity_${s1}`, color: BLUE, label: l1 },
        { column: `fidelity_${s2}`, color: RED, label: l2 },
      ],
    },
    {
      id: "c", csv: `${fig}_c.csv`, x: "alpha", xRange: x, yRange: ranges.c, yLabel: "Vx, Vp",
      curves: [
        { column: `Vx_${s1}`, color: BLUE, label: `Vx ${l1}` },
        { column: `Vp_${s1}`, color: BLUE, dashed: true, label: `Vp ${l1}` },
        { column: `Vx_${s2}`, color: RED, label: `Vx ${l2}` },
        { column: `Vp_${s2}`, color: RED, dashed: true, label: `Vp ${l2}` },
      ],
    },
    {
      id: "d", csv: `${fig}_d.csv`, x: "alpha", xRange: x, yRange: ranges.d, yLabel: "Vx Vp",
      curves: [
        { column: `VxVp_${s1}`, color: BLUE, label: l1 },
        { column: `benchmark_det_${s1}`, color: BLUE, dashed: true, label: `det. ${l1}` },
        { column: `VxVp_${s2}`, color: RED, label: l2 },
        { column: `benchmark_det_${s2}`, color: RED, dashed: true, label: `det. ${l2}` },
      ],
    },
  ];
}

export const FIGURES: Record<string, FigureSpec> = {
  "4": {
    id: "4",
    title: "Ideal amplifier, exact central-outcome conditioning",
    columns: 2,
    panels: fourPanels("fig4", 2, ["g_eff 1.5", "g_eff 2.0"], {
      a: [0.5, 2.2],
      b: [0.9, 1.01],
      c: [0.3, 1.0],
      d: [0, 1.8],
    }, ["geff15", "geff20"]),
  },
  "5": {
    id: "5",
    title: "Realistic amplifier, central-outcome conditioning",
    columns: 2,
    panels: fourPanels("fig5", 1, ["g_eff 1.5", "g_eff 2.0"], {
      a: [0.8, 2.1],
      b: [0.55, 0.95],
      c: [0.4, 1.1],
      d: [0.1, 1.8],
    }, ["geff15", "geff20"]),
  },
  "6": {
    id: "6",
    title: "Finite acceptance window, with/without corrective displacement",
    columns: 3,
    panels: [
      ...fourPanels("fig6", 1, ["k = 1", "k = 0"], {
        a: [0.8, 1.6],
        b: [0.6, 0.9],
        c: [0.45, 1.05],
        d: [0.1, 0.95],
      }, ["k1", "k0"]),
      {
        id: "e", csv: "fig6_e.csv", x: "alpha", xRange: [0, 1], yRange: [0, 0.025],
        yLabel: "P_tele",
        curves: [
          { column: "P_tele_k1", color: BLUE, label: "k = 1" },
          { column: "P_tele_k0", color: RED, label: "k = 0" },
        ],
      },
      {
        id: "f", csv: "fig6_f.csv", x: "alpha", xRange: [0, 1], yRange: [0, 8e-6],
        yLabel: "P_tot",
        curves: [
          { column: "P_tot_k1", color: BLUE, label: "k = 1" },
          { column: "P_tot_k0", color: RED, label: "k = 0" },
        ],
      },
    ],
  },
};
