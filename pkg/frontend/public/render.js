// Canvas drawing of the molecule: nodes colored by type, straight edges,
// self-loop count in the corner.  One layout update per service response
// is triggered from main.ts; this module only draws the current state.
export const NODE_COLORS = {
    S: "#66bb6a",
    K: "#ef5350",
    I: "#ffee58",
    A: "#42a5f5",
    Arrow: "#bdbdbd",
    FRIN: "#ab47bc",
    FROUT: "#ff9800",
};
export function drawGraph(canvas, graph, layout) {
    const ctx = canvas.getContext("2d");
    if (!ctx)
        return;
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    ctx.strokeStyle = "#777";
    ctx.lineWidth = 1;
    for (const link of graph.links) {
        const a = layout.points[link.source];
        const b = layout.points[link.target];
        if (!a || !b)
            continue;
        ctx.beginPath();
        ctx.moveTo(a.x, a.y);
        ctx.lineTo(b.x, b.y);
        ctx.stroke();
    }
    for (const node of graph.nodes) {
        const p = layout.points[node.id];
        if (!p)
            continue;
        const r = node.type === "S" || node.type === "A" ? 9 : 6;
        ctx.beginPath();
        ctx.arc(p.x, p.y, r, 0, Math.PI * 2);
        ctx.fillStyle = NODE_COLORS[node.type] ?? "#ccc";
        ctx.fill();
        ctx.strokeStyle = "#222";
        ctx.stroke();
        if (r > 6) {
            ctx.fillStyle = "#111";
            ctx.font = "9px sans-serif";
            ctx.textAlign = "center";
            ctx.textBaseline = "middle";
            ctx.fillText(node.type, p.x, p.y);
        }
    }
    if (graph.loops > 0) {
        ctx.fillStyle = "#999";
        ctx.font = "11px sans-serif";
        ctx.textAlign = "left";
        ctx.fillText(`${graph.loops} loop edge(s)`, 8, canvas.height - 8);
    }
}
