// Integration tests against the real reduction service, spawned as a
// child process.  Requires the Python package to be installed.

import { ChildProcess, spawn } from "node:child_process";
import { createServer } from "node:net";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiError, Client } from "../src/api.js";
import { sparkPoints } from "../src/sparkline.js";
import { SessionStore } from "../src/store.js";

const QUINE = "(S I I) (S I I)";

let proc: ChildProcess;
let base: string;

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const srv = createServer();
    srv.listen(0, "127.0.0.1", () => {
      const addr = srv.address();
      if (addr && typeof addr === "object") {
        const port = addr.port;
        srv.close(() => resolve(port));
      } else {
        reject(new Error("no port"));
      }
    });
  });
}

async function waitForService(url: string, timeoutMs = 20000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const resp = await fetch(url + "/healthz");
      if (resp.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 150));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  const port = await freePort();
  base = `http://127.0.0.1:${port}`;
  proc = spawn("python3", ["-m", "skimol.cli", "serve", "--port", String(port)], {
    cwd: new URL("../..", import.meta.url).pathname,
    stdio: "ignore",
  });
  await waitForService(base);
}, 30000);

afterAll(() => {
  proc?.kill();
});

describe("playground against the live service", () => {
  it("creates a session from the quine preset and steps it", async () => {
    const store = new SessionStore(new Client(base), 1);
    await store.create({ term: QUINE, seed: 0 });
    expect(store.error).toBeNull();
    expect(store.state?.nodes).toBeGreaterThanOrEqual(9);
    await store.step(10);
    expect(store.state?.stepCount).toBe(10);
    expect(store.passStats).toHaveLength(10);
  });

  it("runs a normalizing preset to its normal form readout", async () => {
    const store = new SessionStore(new Client(base), 1);
    await store.create({ term: "((S K) K) I", seed: 3 });
    while (!store.state?.outcome) {
      const ok = await store.step(20);
      expect(ok).toBe(true);
    }
    expect(store.state.outcome).toBe("normal-form");
    expect(store.state.decodedTerm).toBe("I");
  });

  it("reports term syntax errors as an inline diagnostic", async () => {
    const store = new SessionStore(new Client(base), 1);
    await store.create({ term: "(K S" });
    expect(store.state).toBeNull();
    expect(store.error).toMatch(/^400/);
  });

  it("raises 404 for stale sessions", async () => {
    const client = new Client(base);
    await expect(client.getState("nope")).rejects.toThrowError(ApiError);
    await expect(client.getState("nope")).rejects.toMatchObject({ status: 404 });
  });

  it(
    "slider patch raises the growing-kind acceptance rate",
    { timeout: 30000 },
    async () => {
      const store = new SessionStore(new Client(base), 1);
      await store.create({ term: QUINE, seed: 5, weight: 0.1 });
      await store.step(200);
      const lowStats = store.passStats.slice();
      await store.setWeight(0.9);
      await store.step(200);
      const highStats = store.passStats.slice(lowStats.length);

      const low = store.distAcceptanceRate(lowStats);
      const high = store.distAcceptanceRate(highStats);
      expect(low).toBeGreaterThan(0);
      expect(high).toBeGreaterThan(low); // strictly higher at w=0.9
    },
  );

  it("sparkline values are exactly the service's net series", async () => {
    const store = new SessionStore(new Client(base), 1);
    await store.create({ term: QUINE, seed: 1 });
    await store.step(40);
    const fromStep = store.state!.costReport.netSeries;
    const fresh = await new Client(base).getState(store.state!.id);
    expect(fromStep).toEqual(fresh.costReport.netSeries);
    // the sparkline plots that series one-to-one, no resampling
    const pts = sparkPoints(fromStep, 250, 52);
    expect(pts).toHaveLength(fromStep.length);
    const running: number[] = [];
    let sum = 0;
    for (const stepCost of fresh.costReport.perStep) {
      sum += stepCost.net;
      running.push(sum);
    }
    expect(fromStep).toEqual(running);
  });
});
