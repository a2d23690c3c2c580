import { defineConfig } from "vitest/config";

// the default worker-threads pool deadlocks in minimal container kernels;
// child-process forks are dependable everywhere
export default defineConfig({
    test: {
        pool: "forks",
        testTimeout: 120_000,
    },
});
