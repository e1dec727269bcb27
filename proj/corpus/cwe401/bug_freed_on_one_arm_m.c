int cwe401_bug_freed_on_one_arm_m_main(int c) {
  char *p = malloc(16);
  if (c) {
    free(p);
  } else {
    p[1] = 2;
  }
  return 0;
}
