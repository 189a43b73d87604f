// Playground wiring: controls on the left, live graph in the middle,
// ledger / cost / log panels on the right.
import { Client } from "./api.js";
import { ForceLayout } from "./layout.js";
import { parseMol } from "./molparse.js";
import { drawGraph } from "./render.js";
import { drawSparkline } from "./sparkline.js";
import { SessionStore } from "./store.js";
import { REWRITE_KINDS } from "./types.js";
const PRESETS = {
    "quine (S I I) (S I I)": "(S I I) (S I I)",
    "dirty quine": "(S I I) (S (K (S I I)) (S (K (S I)) (S (K K) I)))",
    "((S K) K) I": "((S K) K) I",
};
function el(id) {
    const node = document.getElementById(id);
    if (!node)
        throw new Error(`missing #${id}`);
    return node;
}
const store = new SessionStore(new Client(""));
const graphCanvas = el("graph");
const sparkCanvas = el("sparkline");
const layout = new ForceLayout(graphCanvas.width, graphCanvas.height);
let viewGraph = { nodes: [], links: [], loops: 0 };
let lastMol = "";
function refreshGraph() {
    if (!store.state)
        return;
    if (store.state.mol !== lastMol) {
        lastMol = store.state.mol;
        viewGraph = parseMol(lastMol);
        layout.setGraph(viewGraph);
    }
}
function fmtTokens() {
    const ledger = store.state?.ledger;
    if (!ledger)
        return "";
    const rows = Object.entries(ledger)
        .filter(([k]) => k !== "waste" && k !== "mintCount")
        .map(([k, v]) => `<tr><td>${k}</td><td>${v}</td></tr>`);
    const waste = Object.entries(ledger.waste)
        .map(([k, v]) => `<tr><td>${k} (waste)</td><td>${v}</td></tr>`)
        .join("");
    return `<table>${rows.join("")}${waste}</table>
    <div class="dim">minted names: ${ledger.mintCount}</div>`;
}
function fmtLog() {
    const rows = store.log
        .slice(-30)
        .map((rec) => {
        const kind = (REWRITE_KINDS[rec.rewrite] ?? "?").toLowerCase();
        return `<div class="log-${kind}">#${rec.step} ${rec.rewrite}` +
            ` <span class="dim">nodes ${rec.nodes}, net ${rec.costOut - rec.costIn}</span></div>`;
    })
        .reverse();
    const counts = store.kindCounts();
    const summary = Object.entries(counts)
        .map(([k, v]) => `${k}:${v}`)
        .join("  ");
    return `<div class="dim">${summary}</div>${rows.join("")}`;
}
function render() {
    refreshGraph();
    const state = store.state;
    el("status").textContent = store.error
        ? `error ${store.error}`
        : state
            ? `${state.nodes} nodes, pass ${state.stepCount}` +
                (state.outcome ? `, ${state.outcome}` : store.running ? ", running" : "")
            : "no session";
    el("term-readout").textContent = state?.decodedTerm ?? "(not a term right now)";
    el("cost-readout").textContent = state
        ? `net ${state.costReport.cumulativeNet} (in ${state.costReport.cumulativeIn}, ` +
            `out ${state.costReport.cumulativeOut}, blocked ${state.costReport.blockedRewrites})`
        : "";
    el("ledger").innerHTML = fmtTokens();
    el("log").innerHTML = fmtLog();
    el("dist-rate").textContent = store.passStats.length
        ? `grow acceptance ${(store.distAcceptanceRate() * 100).toFixed(0)}%`
        : "";
    (el("run")).disabled = !state || !!state.outcome || store.running;
    (el("pause")).disabled = !store.running;
    (el("step")).disabled = !state || !!state.outcome || store.busy;
    if (state)
        drawSparkline(sparkCanvas, state.costReport.netSeries);
}
function animate() {
    if (viewGraph.nodes.length && layout.energy() > 0.02) {
        layout.step(2);
        drawGraph(graphCanvas, viewGraph, layout);
    }
    requestAnimationFrame(animate);
}
function currentParams() {
    const presetSel = el("preset");
    const custom = el("custom-term").value.trim();
    const term = custom || PRESETS[presetSel.value];
    return {
        term,
        seed: parseInt(el("seed").value, 10) || 0,
        weight: parseFloat(el("weight").value),
        tokenMode: el("token-mode").value,
        prefund: el("token-mode").value === "strict" ? 1000 : 0,
    };
}
function wire() {
    const presetSel = el("preset");
    for (const name of Object.keys(PRESETS)) {
        const opt = document.createElement("option");
        opt.value = name;
        opt.textContent = name;
        presetSel.appendChild(opt);
    }
    el("load").addEventListener("click", () => {
        void store.create(currentParams());
    });
    el("run").addEventListener("click", () => store.run());
    el("pause").addEventListener("click", () => store.pause());
    el("step").addEventListener("click", () => void store.step());
    const weight = el("weight");
    weight.addEventListener("input", () => {
        el("weight-value").textContent = weight.value;
        if (store.state)
            void store.setWeight(parseFloat(weight.value));
    });
    store.onChange(render);
    render();
    animate();
}
wire();
