int cwe415_ok_one_per_arm_m_main(int c) {
  char *p = malloc(16);
  if (c) {
    free(p);
  } else {
    free(p);
  }
  return 0;
}
