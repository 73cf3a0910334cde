/** DOM shell: renders store state and wires the control panel.
 *
 * All math lives on the server; this file only formats server numbers and
 * forwards clicks.
 */

import { SessionClient } from "./api.js";
import {
  DEFAULT_LAYOUT,
  circleInset,
  clickToAngle,
  patternSvg,
  type SeriesSpec,
} from "./chart.js";
import { WorkbenchStore, markers } from "./store.js";
import type { Complex, Method, StepSummary } from "./types.js";

const METHODS: Method[] = ["oparc", "parc", "a2rc"];

const store = new WorkbenchStore(new SessionClient(""));

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function fmt(value: number | null | undefined, digits = 4): string {
  return value == null ? "–" : value.toFixed(digits);
}

function fmtComplex(z: Complex | undefined): string {
  if (!z) return "–";
  const [re, im] = z;
  return `${re.toFixed(4)} ${im < 0 ? "−" : "+"} j${Math.abs(im).toFixed(4)}`;
}

function insetSvg(summary: StepSummary): string {
  const name = summary.mu ? "mu" : "gamma";
  const circle = summary.circles[name];
  if (!circle) return "";
  const highlights: { value: Complex; label: string }[] = [];
  if (summary.gamma_candidates) {
    highlights.push({ value: summary.gamma_candidates.a, label: "a" });
    highlights.push({ value: summary.gamma_candidates.b, label: "b" });
  }
  if (summary.gamma) highlights.push({ value: summary.gamma, label: "★" });
  if (summary.mu) highlights.push({ value: summary.mu, label: "μ" });
  const inset = circleInset(circle, highlights);
  const points = inset.points
    .map(
      (p) =>
        `<circle cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" r="2.5"/>` +
        `<text x="${(p.x + 4).toFixed(1)}" y="${(p.y - 4).toFixed(1)}">${p.label}</text>`,
    )
    .join("");
  return (
    `<svg class="inset" viewBox="${inset.viewBox}" width="120" height="120">` +
    `<circle class="locus" cx="${inset.cx.toFixed(1)}" cy="${inset.cy.toFixed(1)}"` +
    ` r="${inset.r.toFixed(1)}" fill="none"/>${points}</svg>`
  );
}

function stepCard(summary: StepSummary): string {
  const rows: string[] = [
    `<div class="row"><span>direction</span><b>${summary.theta_deg.toFixed(1)}°</b></div>`,
    `<div class="row"><span>prescribed</span><b>${summary.rho_db.toFixed(2)} dB</b></div>`,
    `<div class="row"><span>achieved</span><b>${fmt(summary.achieved_level_db, 6)} dB</b></div>`,
    `<div class="row"><span>array gain</span><b>${fmt(summary.gain_db)} dB</b></div>`,
  ];
  if (summary.gamma) {
    rows.push(`<div class="row"><span>γ</span><b>${fmtComplex(summary.gamma)}</b></div>`);
    rows.push(`<div class="row"><span>β (power)</span><b>${fmt(summary.beta)}</b></div>`);
  }
  if (summary.mu) {
    rows.push(`<div class="row"><span>μ</span><b>${fmtComplex(summary.mu)}</b></div>`);
    const inrs = (summary.implicit_inrs ?? [])
      .map((z, i) => `β̆<sub>${i + 1}</sub> = ${fmtComplex(z)}`)
      .join("<br>");
    rows.push(`<div class="row inrs"><span>implicit powers</span><b>${inrs}</b></div>`);
  }
  if (summary.metrics.d_db != null) {
    rows.push(
      `<div class="row"><span>shift at prev point</span><b>${fmt(summary.metrics.d_db)} dB</b></div>`,
    );
    rows.push(`<div class="row"><span>pattern RMS shift</span><b>${summary.metrics.j_rms?.toExponential(3)}</b></div>`);
  }
  return (
    `<div class="card"><div class="card-head">step ${summary.index} · ${summary.method}</div>` +
    `<div class="card-body"><div class="rows">${rows.join("")}</div>${insetSvg(summary)}</div></div>`
  );
}

function render(): void {
  const chartHost = el<HTMLDivElement>("chart");
  const cards = el<HTMLDivElement>("steps");
  const status = el<HTMLDivElement>("status");
  const errorBox = el<HTMLDivElement>("error");

  errorBox.textContent = store.lastError ?? "";
  errorBox.hidden = !store.lastError;

  if (!store.primary) {
    chartHost.innerHTML = `<div class="empty">No session yet — pick a beam axis and method, then press Start.</div>`;
    cards.innerHTML = "";
    status.textContent = "";
    return;
  }

  const series: SeriesSpec[] = store.sessions
    .filter((v) => v.pattern)
    .map((v) => ({
      anglesDeg: v.pattern!.angles_deg,
      levelsDb: v.pattern!.levels_db,
      cssClass: `series-${v.method}`,
      label: v.method,
    }));
  chartHost.innerHTML = patternSvg(series, markers(store.primary));

  const svg = chartHost.querySelector("svg");
  svg?.addEventListener("click", (ev) => {
    const rect = (svg as SVGSVGElement).getBoundingClientRect();
    const scaleX = DEFAULT_LAYOUT.width / rect.width;
    const angle = clickToAngle((ev.clientX - rect.left) * scaleX, DEFAULT_LAYOUT);
    if (angle !== null) el<HTMLInputElement>("theta").value = angle.toFixed(1);
  });

  cards.innerHTML = store.primary.steps.map(stepCard).reverse().join("");
  const legend = store.sessions.map((v) => `<span class="series-${v.method}">${v.method}</span>`).join(" ");
  status.innerHTML =
    `session <code>${store.primary.id}</code> · axis ${store.primary.theta0Deg}° · ` +
    `${store.primary.steps.length} step(s) · ${legend}`;
  el<HTMLButtonElement>("step-btn").disabled = store.pending;
  el<HTMLButtonElement>("undo-btn").disabled = store.primary.steps.length === 0;
}

async function guard(action: () => Promise<void>): Promise<void> {
  try {
    await action();
  } catch {
    // store.lastError already carries the server detail
  }
  render();
}

function wire(): void {
  el<HTMLButtonElement>("start-btn").addEventListener("click", () =>
    guard(async () => {
      const theta0 = Number(el<HTMLInputElement>("theta0").value);
      const method = el<HTMLSelectElement>("method").value as Method;
      await store.start(theta0, method);
      if (el<HTMLInputElement>("compare").checked) await store.enableComparison(METHODS);
    }),
  );
  el<HTMLButtonElement>("step-btn").addEventListener("click", () =>
    guard(async () => {
      const theta = Number(el<HTMLInputElement>("theta").value);
      const rho = Number(el<HTMLInputElement>("rho").value);
      await store.step(theta, rho);
    }),
  );
  el<HTMLButtonElement>("undo-btn").addEventListener("click", () => guard(() => store.undo()));
  el<HTMLInputElement>("compare").addEventListener("change", (ev) =>
    guard(async () => {
      if ((ev.target as HTMLInputElement).checked) {
        if (store.primary) await store.enableComparison(METHODS);
      } else {
        store.disableComparison();
      }
    }),
  );
  render();
}

wire();
