/**
 * Analytic overlay curves, recomputed from CSV header metadata.
 *
 * Every formula here is evaluated from the metadata keys (d, N, alpha,
 * model, k) and the x grid of the table being plotted; no curve values
 * are ever hand-entered. Each computed overlay carries a checksum of
 * exactly those inputs for the image sidecar.
 */

import { createHash } from "node:crypto";

import { column, metaInt, metaNumber, metaString, MissingMetadataError, Table } from "./csv.js";
import { OverlayName } from "./recipe.js";
import {
  ballVolume,
  besselJ,
  besselY,
  EULER_GAMMA,
  gammaFn,
  gaussLegendre,
  hyp0f1,
  sphereSurface,
} from "./special.js";

export class OverlayError extends Error {}

/** Radius of a gas of n scatterers at unit number density. */
export function gasRadius(d: number, n: number): number {
  if (n < 1) {
    throw new RangeError("need at least one scatterer");
  }
  return Math.pow(n / ballVolume(d), 1 / d);
}

/** Coincidence value I(k,0) = (pi/2) S_d (2 pi)^(-d) k^(d-2). */
export function greenImagZero(d: number, k: number): number {
  return (Math.PI / 2) * sphereSurface(d) * Math.pow(2 * Math.PI, -d) * Math.pow(k, d - 2);
}

/**
 * cot of the s-wave phase shift.
 *
 * hardsphere keeps the full ratio Y_nu(alpha k)/J_nu(alpha k) with
 * nu = (d-2)/2; deltalike keeps only its low-energy limit. Returns
 * Infinity at a hard-sphere pole (J_nu = 0), where the cross section
 * vanishes.
 */
export function phaseShiftCot(model: string, d: number, alpha: number, k: number): number {
  const x = alpha * k;
  if (model === "hardsphere") {
    const nu = (d - 2) / 2;
    const jn = besselJ(nu, x);
    if (jn === 0) {
      return Infinity;
    }
    return besselY(nu, x) / jn;
  }
  if (model === "deltalike") {
    if (d === 2) {
      return (2 / Math.PI) * (Math.log(x / 2) + EULER_GAMMA);
    }
    return (-gammaFn((d - 2) / 2) * gammaFn(d / 2) / Math.PI) * Math.pow(x / 2, 2 - d);
  }
  throw new OverlayError(`cannot compute a phase shift for model '${model}'`);
}

/** Total cross section of one scatterer, 1/(k I(k,0) (1 + cot^2 delta)). */
export function pointCrossSection(model: string, d: number, alpha: number, k: number): number {
  const cot = phaseShiftCot(model, d, alpha, k);
  if (!Number.isFinite(cot)) {
    return 0;
  }
  return 1 / (k * greenImagZero(d, k) * (1 + cot * cot));
}

/** Universal s-wave bound 1/(k I(k,0)). */
export function crossSectionBound(d: number, k: number): number {
  return 1 / (k * greenImagZero(d, k));
}

/** Pair interference factor c(qR) = 0F1((d+2)/2; -(qR)^2/4)^2. */
export function pairFactor(d: number, qr: number): number {
  const amp = hyp0f1((d + 2) / 2, (-qr * qr) / 4);
  return amp * amp;
}

/**
 * Angular average C of the pair factor over the d-sphere, by
 * Gauss-Legendre quadrature with the node count growing with kR.
 */
export function bornTotalFactor(d: number, kRadius: number): number {
  if (d < 2) {
    throw new RangeError("defined for d >= 2");
  }
  const n = 4 * Math.ceil(kRadius) + 64;
  const { x, w } = gaussLegendre(n);
  const ratio = sphereSurface(d - 1) / sphereSurface(d);
  let acc = 0;
  for (let i = 0; i < n; i++) {
    const theta = (x[i] + 1) * (Math.PI / 2);
    const qr = 2 * kRadius * Math.sin(theta / 2);
    acc += w[i] * pairFactor(d, qr) * Math.pow(Math.sin(theta), d - 2);
  }
  return ratio * (Math.PI / 2) * acc;
}

/** Single-scattering dsigma/dOmega = N sigma_pt/S_d [1 + (N-1) c]. */
export function bornDiff(
  model: string, d: number, n: number, alpha: number, k: number, thetaDeg: number[]): number[] {
  const radius = gasRadius(d, n);
  const sigma = pointCrossSection(model, d, alpha, k);
  const pref = (n * sigma) / sphereSurface(d);
  return thetaDeg.map((td) => {
    const qr = 2 * k * radius * Math.sin((td * Math.PI) / 360);
    return pref * (1 + (n - 1) * pairFactor(d, qr));
  });
}

/** Fraunhofer dsigma/dOmega of an opaque ball, small-angle form. */
export function airyDiff(d: number, k: number, radius: number, thetaDeg: number[]): number[] {
  if (d < 2) {
    throw new RangeError("diffractive pattern defined for d >= 2");
  }
  const pref =
    (Math.pow(radius, d - 1) * Math.pow((k * radius) / 2, d - 1)) /
    Math.pow(gammaFn((d + 1) / 2), 2);
  return thetaDeg.map((td) => {
    const theta = (td * Math.PI) / 180;
    const lobe = hyp0f1((d + 1) / 2, -Math.pow(k * radius * theta, 2) / 4);
    return pref * lobe * lobe;
  });
}

/** Extinction plateau 2 V_{d-1} R^{d-1}, twice the silhouette. */
export function extinctionCrossSection(d: number, radius: number): number {
  if (d < 2) {
    throw new RangeError("extinction plateau defined for d >= 2");
  }
  return 2 * ballVolume(d - 1) * Math.pow(radius, d - 1);
}

export interface OverlayCurve {
  name: OverlayName;
  label: string;
  x: number[];
  y: number[];
  /** the metadata inputs the curve was computed from, for the sidecar */
  inputs: Record<string, string | number>;
  checksum: string;
}

function checksumOf(name: string, inputs: Record<string, string | number>, x: number[]): string {
  const h = createHash("sha256");
  h.update(name);
  for (const key of Object.keys(inputs).sort()) {
    h.update(`|${key}=${inputs[key]}`);
  }
  h.update(`|x=${x.map((v) => v.toPrecision(17)).join(",")}`);
  return h.digest("hex");
}

function xGrid(t: Table): number[] {
  return column(t, t.columns[0]);
}

/** Compute one overlay curve on the table's own x grid. */
export function computeOverlay(name: OverlayName, t: Table): OverlayCurve {
  const kind = metaString(t, "kind");
  const d = metaInt(t, "d");
  const x = xGrid(t);
  let y: number[];
  let label: string;
  let inputs: Record<string, string | number>;
  if (name === "born" && kind === "diff-xs") {
    const n = metaInt(t, "N");
    const alpha = metaNumber(t, "alpha");
    const model = metaString(t, "model");
    const k = metaNumber(t, "k");
    y = bornDiff(model, d, n, alpha, k, x);
    label = "single scattering";
    inputs = { d, N: n, alpha, model, k };
  } else if (name === "born" && kind === "total-xs") {
    const n = metaInt(t, "N");
    const alpha = metaNumber(t, "alpha");
    const model = metaString(t, "model");
    const radius = gasRadius(d, n);
    y = x.map((k) => {
      const sigma = n * pointCrossSection(model, d, alpha, k);
      return sigma * (1 + (n - 1) * bornTotalFactor(d, k * radius));
    });
    label = "single scattering";
    inputs = { d, N: n, alpha, model };
  } else if (name === "additive" && kind === "total-xs") {
    const n = metaInt(t, "N");
    const alpha = metaNumber(t, "alpha");
    const model = metaString(t, "model");
    y = x.map((k) => n * pointCrossSection(model, d, alpha, k));
    label = "additive limit";
    inputs = { d, N: n, alpha, model };
  } else if (name === "airy" && kind === "diff-xs") {
    const n = metaInt(t, "N");
    const k = metaNumber(t, "k");
    const radius = gasRadius(d, n);
    y = airyDiff(d, k, radius, x);
    label = "diffraction pattern";
    inputs = { d, N: n, k };
  } else if (name === "extinction" && kind === "total-xs") {
    const n = metaInt(t, "N");
    const value = extinctionCrossSection(d, gasRadius(d, n));
    y = x.map(() => value);
    label = "extinction plateau";
    inputs = { d, N: n };
  } else if (name === "envelope" && kind === "point-xs") {
    y = x.map((k) => crossSectionBound(d, k));
    label = "resonant envelope";
    inputs = { d };
  } else {
    throw new OverlayError(`overlay '${name}' does not apply to kind '${kind}'`);
  }
  return { name, label, x, y, inputs, checksum: checksumOf(name, inputs, x) };
}

export { MissingMetadataError };
