int cwe415_bug_then_arm_then_after_m_main(int c) {
  char *p = malloc(16);
  if (c) {
    free(p);
  } else {
    p[0] = 1;
  }
  free(p);
  return 0;
}
