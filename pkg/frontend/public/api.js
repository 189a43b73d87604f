// Thin typed client over the session endpoints.
export class ApiError extends Error {
    constructor(status, message) {
        super(message);
        this.status = status;
    }
}
async function request(base, method, path, body) {
    const resp = await fetch(base + path, {
        method,
        headers: body === undefined ? {} : { "content-type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!resp.ok) {
        let detail = resp.statusText;
        try {
            const data = await resp.json();
            if (data && typeof data.error === "string")
                detail = data.error;
        }
        catch {
            // keep the status text
        }
        throw new ApiError(resp.status, detail);
    }
    if (resp.status === 204)
        return undefined;
    return (await resp.json());
}
export class Client {
    constructor(base = "") {
        this.base = base;
    }
    createSession(params) {
        return request(this.base, "POST", "/sessions", params);
    }
    getState(id) {
        return request(this.base, "GET", `/sessions/${id}`);
    }
    step(id, passes) {
        return request(this.base, "POST", `/sessions/${id}/step`, { passes });
    }
    setWeight(id, weight) {
        return request(this.base, "PATCH", `/sessions/${id}/config`, { weight });
    }
    deleteSession(id) {
        return request(this.base, "DELETE", `/sessions/${id}`);
    }
}
