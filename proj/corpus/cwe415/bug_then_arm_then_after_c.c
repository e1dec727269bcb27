int cwe415_bug_then_arm_then_after_c_main(int c) {
  char *p = calloc(4, 4);
  if (c) {
    free(p);
  } else {
    p[0] = 1;
  }
  free(p);
  return 0;
}
