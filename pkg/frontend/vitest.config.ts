import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    // The integration test generates a dataset and boots the annotation
    // service, which takes a little while on a cold run.
    testTimeout: 120_000,
    hookTimeout: 120_000,
  },
});
