/** Wire types for the session API; see ../schema/wire-schema.json. */

export type Method = "oparc" | "parc" | "a2rc";

/** Complex numbers travel as [re, im]. */
export type Complex = [number, number];

export interface Circle {
  center: Complex;
  radius: number;
}

export interface StepMetrics {
  d_db: number | null;
  j_rms: number | null;
}

export interface StepSummary {
  index: number;
  method: Method;
  theta_deg: number;
  rho_db: number;
  achieved_level_db: number;
  gain_db: number;
  metrics: StepMetrics;
  circles: Record<string, Circle>;
  // optimal/baseline engines
  gamma?: Complex;
  beta?: number;
  gamma_candidates?: { a: Complex; b: Complex; zeta: number };
  beta_candidates?: { l: number; r: number };
  // min-modulus engine
  mu?: Complex;
  implicit_inrs?: Complex[];
}

export interface PatternMeta {
  theta0_deg: number;
  method: Method;
  step: number;
}

export interface Pattern {
  angles_deg: number[];
  levels_db: number[];
  meta: PatternMeta;
}

export interface SessionInfo {
  id: string;
  method: Method;
  theta0_deg: number;
  array?: string;
  steps: StepSummary[];
}
