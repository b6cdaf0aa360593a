/**
 * Real-argument special functions for the overlay curves.
 *
 * These are independent transcriptions of the standard series and
 * asymptotic expansions, so the overlays drawn by this package act as
 * a cross-check of the simulation side rather than a copy of it.
 */

export const EULER_GAMMA = 0.5772156649015329;

// Lanczos approximation, g = 7, 9 coefficients.
const LANCZOS_G = 7;
const LANCZOS = [
  0.99999999999980993,
  676.5203681218851,
  -1259.1392167224028,
  771.32342877765313,
  -176.61502916214059,
  12.507343278686905,
  -0.13857109526572012,
  9.9843695780195716e-6,
  1.5056327351493116e-7,
];

/** Gamma function for real x away from the non-positive integers. */
export function gammaFn(x: number): number {
  if (x <= 0 && Number.isInteger(x)) {
    throw new RangeError(`gamma pole at ${x}`);
  }
  if (x < 0.5) {
    // reflection keeps the Lanczos sum in its accurate range
    return Math.PI / (Math.sin(Math.PI * x) * gammaFn(1 - x));
  }
  const z = x - 1;
  let acc = LANCZOS[0];
  for (let i = 1; i < LANCZOS.length; i++) {
    acc += LANCZOS[i] / (z + i);
  }
  const t = z + LANCZOS_G + 0.5;
  return Math.sqrt(2 * Math.PI) * Math.pow(t, z + 0.5) * Math.exp(-t) * acc;
}

// Below the seam the ascending series still has acceptable alternating
// cancellation (about five digits lost at x = 14); above it the Hankel
// asymptotic sums are already converged well past double precision.
const BESSEL_SEAM = 14;

function besselJSeries(nu: number, x: number): number {
  const q = x * x / 4;
  let term = Math.pow(x / 2, nu) / gammaFn(nu + 1);
  let acc = term;
  for (let m = 1; m < 200; m++) {
    term *= -q / (m * (nu + m));
    acc += term;
    if (Math.abs(term) <= 1e-17 * Math.abs(acc)) {
      break;
    }
  }
  return acc;
}

interface HankelSums {
  p: number;
  q: number;
}

// A&S 9.2.9/9.2.10: P collects the even terms of the 1/(8x) expansion
// with alternating sign, Q the odd ones.
function hankelSums(nu: number, x: number): HankelSums {
  const mu = 4 * nu * nu;
  let p = 1;
  let q = 0;
  let term = 1;
  let prev = Infinity;
  for (let j = 1; j <= 30; j++) {
    const odd = 2 * j - 1;
    term *= (mu - odd * odd) / (j * 8 * x);
    if (Math.abs(term) >= prev) {
      break; // asymptotic tail started to diverge
    }
    prev = Math.abs(term);
    const sign = j % 4 < 2 ? 1 : -1;
    if (j % 2 === 1) {
      q += sign * term;
    } else {
      p += sign * term;
    }
    if (Math.abs(term) <= 1e-17) {
      break;
    }
  }
  return { p, q };
}

/** Bessel function of the first kind J_nu(x), x >= 0, nu >= -1/2. */
export function besselJ(nu: number, x: number): number {
  if (x < 0) {
    throw new RangeError("besselJ requires x >= 0");
  }
  if (x === 0) {
    return nu === 0 ? 1 : 0;
  }
  if (x < BESSEL_SEAM) {
    return besselJSeries(nu, x);
  }
  const { p, q } = hankelSums(nu, x);
  const omega = x - (nu / 2 + 0.25) * Math.PI;
  return Math.sqrt(2 / (Math.PI * x)) * (p * Math.cos(omega) - q * Math.sin(omega));
}

// A&S 9.1.11 for integer order: log term, finite sum, digamma series.
function besselYIntSeries(n: number, x: number): number {
  const logTerm = (2 / Math.PI) * Math.log(x / 2) * besselJ(n, x);
  let finite = 0;
  for (let m = 0; m < n; m++) {
    finite += (gammaFn(n - m) / gammaFn(m + 1)) * Math.pow(x / 2, 2 * m - n);
  }
  let psiA = -EULER_GAMMA; // psi(1)
  let psiB = -EULER_GAMMA;
  for (let j = 1; j <= n; j++) {
    psiB += 1 / j; // psi(n+1)
  }
  let term = Math.pow(x / 2, n) / gammaFn(n + 1);
  let series = term * (psiA + psiB);
  for (let m = 1; m < 200; m++) {
    term *= -(x * x / 4) / (m * (m + n));
    psiA += 1 / m;
    psiB += 1 / (m + n);
    const t = term * (psiA + psiB);
    series += t;
    if (Math.abs(t) <= 1e-17 * Math.abs(series) + 1e-300) {
      break;
    }
  }
  return logTerm - finite / Math.PI - series / Math.PI;
}

/** Bessel function of the second kind Y_nu(x), x > 0. */
export function besselY(nu: number, x: number): number {
  if (!(x > 0)) {
    throw new RangeError("besselY requires x > 0");
  }
  if (x >= BESSEL_SEAM) {
    const { p, q } = hankelSums(nu, x);
    const omega = x - (nu / 2 + 0.25) * Math.PI;
    return Math.sqrt(2 / (Math.PI * x)) * (p * Math.sin(omega) + q * Math.cos(omega));
  }
  if (Number.isInteger(nu)) {
    if (nu < 0) {
      throw new RangeError("besselY implemented for nu >= 0");
    }
    return besselYIntSeries(nu, x);
  }
  const s = Math.sin(nu * Math.PI);
  return (besselJSeries(nu, x) * Math.cos(nu * Math.PI) - besselJSeries(-nu, x)) / s;
}

/**
 * Confluent limit function 0F1(a; z).
 *
 * The direct series is cancellation-free for z >= 0 and acceptable down
 * to z = -16; more negative arguments reroute through
 * 0F1(a; -x^2/4) = Gamma(a) (x/2)^(1-a) J_(a-1)(x).
 */
export function hyp0f1(a: number, z: number): number {
  if (a <= 0 && Number.isInteger(a)) {
    throw new RangeError("hyp0f1 pole: a is a non-positive integer");
  }
  if (z >= -16) {
    let term = 1;
    let acc = 1;
    for (let m = 1; m < 500; m++) {
      term *= z / (m * (a + m - 1));
      acc += term;
      if (Math.abs(term) <= 1e-17 * Math.abs(acc)) {
        break;
      }
    }
    return acc;
  }
  const x = 2 * Math.sqrt(-z);
  return gammaFn(a) * Math.pow(x / 2, 1 - a) * besselJ(a - 1, x);
}

export interface Quadrature {
  x: Float64Array;
  w: Float64Array;
}

const glCache = new Map<number, Quadrature>();

/** Gauss-Legendre nodes and weights on [-1, 1], by Newton refinement. */
export function gaussLegendre(n: number): Quadrature {
  if (!Number.isInteger(n) || n < 1) {
    throw new RangeError("node count must be a positive integer");
  }
  const hit = glCache.get(n);
  if (hit) {
    return hit;
  }
  const x = new Float64Array(n);
  const w = new Float64Array(n);
  const half = Math.floor((n + 1) / 2);
  for (let i = 0; i < half; i++) {
    let z = Math.cos((Math.PI * (i + 0.75)) / (n + 0.5));
    let dp = 0;
    for (let iter = 0; iter < 100; iter++) {
      let p0 = 1;
      let p1 = z;
      for (let j = 2; j <= n; j++) {
        const p2 = ((2 * j - 1) * z * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = (n * (z * p1 - p0)) / (z * z - 1);
      const dz = p1 / dp;
      z -= dz;
      if (Math.abs(dz) < 1e-15) {
        break;
      }
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    const wi = 2 / ((1 - z * z) * dp * dp);
    w[i] = wi;
    w[n - 1 - i] = wi;
  }
  const result = { x, w };
  glCache.set(n, result);
  return result;
}

/** Volume of the unit d-ball. */
export function ballVolume(d: number): number {
  if (d < 1) {
    throw new RangeError("dimension must be >= 1");
  }
  return Math.pow(Math.PI, d / 2) / gammaFn(d / 2 + 1);
}

/** Surface of the unit (d-1)-sphere, S_d = d V_d. */
export function sphereSurface(d: number): number {
  return d * ballVolume(d);
}
